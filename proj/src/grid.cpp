#include "fsg/grid.hpp"

#include "fsg/kernels.hpp"

#include <cmath>
#include <stdexcept>

namespace fsg {

namespace {

void check_same_grid(const GridFunction& u, const GridFunction& v) {
  if (!(u.grid() == v.grid()))
    throw std::invalid_argument("grid functions live on different grids");
}

}  // namespace

SpatialGrid SpatialGrid::make(double L, int M) {
  if (!(L > 0.0))
    throw std::invalid_argument("SpatialGrid: edge length must be positive");
  if (M < 2)
    throw std::invalid_argument("SpatialGrid: need at least two intervals per edge");
  SpatialGrid g;
  g.length = L;
  g.intervals = M;
  g.h = L / M;
  return g;
}

double inner(const GridFunction& u, const GridFunction& v) {
  check_same_grid(u, v);
  const double h = u.grid().h;
  return h * h * kernels::dot(u.values(), v.values());
}

double norm_l2(const GridFunction& u) {
  return std::sqrt(inner(u, u));
}

double norm_max(const GridFunction& u) {
  return kernels::max_abs(u.values());
}

GridFunction laplacian_5pt(const GridFunction& u) {
  GridFunction out(u.grid());
  const std::size_t m = static_cast<std::size_t>(u.interior());
  const double h = u.grid().h;
  kernels::laplacian5(u.data(), out.data(), m, 1.0 / (h * h));
  return out;
}

double grad_inner(const GridFunction& u, const GridFunction& v) {
  check_same_grid(u, v);
  const int m = u.interior();  // interior points per direction; M = m+1
  // x-direction fluxes: rows j = 1..m, edges i = 1..M with zero end values
  const double sx = kernels::reduce_rows(static_cast<std::size_t>(m), [&](std::size_t jr) {
    const int j = static_cast<int>(jr) + 1;
    kernels::Kahan acc;
    double du_prev = 0.0, dv_prev = 0.0;
    for (int i = 1; i <= m; ++i) {
      const double du = u(i, j), dv = v(i, j);
      acc.add((du - du_prev) * (dv - dv_prev));
      du_prev = du;
      dv_prev = dv;
    }
    acc.add(du_prev * dv_prev);  // last edge: 0 - U_{m,j}
    return acc.value();
  });
  // y-direction fluxes: columns i = 1..m
  const double sy = kernels::reduce_rows(static_cast<std::size_t>(m), [&](std::size_t ir) {
    const int i = static_cast<int>(ir) + 1;
    kernels::Kahan acc;
    double du_prev = 0.0, dv_prev = 0.0;
    for (int j = 1; j <= m; ++j) {
      const double du = u(i, j), dv = v(i, j);
      acc.add((du - du_prev) * (dv - dv_prev));
      du_prev = du;
      dv_prev = dv;
    }
    acc.add(du_prev * dv_prev);
    return acc.value();
  });
  // the h^2 weight cancels against the two 1/h factors in the differences
  return sx + sy;
}

double seminorm_h1(const GridFunction& u) {
  return std::sqrt(grad_inner(u, u));
}

}  // namespace fsg

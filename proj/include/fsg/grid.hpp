#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace fsg {

// Uniform square grid on (0,L)^2 with M intervals per edge.
struct SpatialGrid {
  double length = 1.0;
  int intervals = 2;  // M
  double h = 0.5;     // length / M

  static SpatialGrid make(double L, int M);
  int interior() const { return intervals - 1; }
  double x(int i) const { return h * i; }
  friend bool operator==(const SpatialGrid&, const SpatialGrid&) = default;
};

// Interior nodal values of a grid function with homogeneous Dirichlet data:
// the zero boundary is implicit and never stored, so membership in the
// zero-trace space cannot be violated.
class GridFunction {
public:
  GridFunction() = default;
  explicit GridFunction(const SpatialGrid& g)
      : grid_(g), v_(static_cast<std::size_t>(g.interior()) * g.interior(), 0.0) {}

  template <class F>
  static GridFunction sample(const SpatialGrid& g, F f) {
    GridFunction u(g);
    const int m = g.interior();
    for (int j = 1; j <= m; ++j)
      for (int i = 1; i <= m; ++i)
        u(i, j) = f(g.x(i), g.x(j));
    return u;
  }

  const SpatialGrid& grid() const { return grid_; }
  int interior() const { return grid_.interior(); }

  // interior indices run 1..M-1 in each direction
  double& operator()(int i, int j) { return v_[idx(i, j)]; }
  double operator()(int i, int j) const { return v_[idx(i, j)]; }

  std::span<double> values() { return v_; }
  std::span<const double> values() const { return v_; }
  double* data() { return v_.data(); }
  const double* data() const { return v_.data(); }
  std::size_t size() const { return v_.size(); }

private:
  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(j - 1) * grid_.interior() +
           static_cast<std::size_t>(i - 1);
  }
  SpatialGrid grid_;
  std::vector<double> v_;
};

// h^2-weighted interior inner product and the induced L2 norm.
double inner(const GridFunction& u, const GridFunction& v);
double norm_l2(const GridFunction& u);
double norm_max(const GridFunction& u);

// Standard five-point Laplacian with the implicit zero boundary.
GridFunction laplacian_5pt(const GridFunction& u);

// Staggered forward-difference flux sum (the discrete gradient inner product)
// and the induced H1 seminorm.
double grad_inner(const GridFunction& u, const GridFunction& v);
double seminorm_h1(const GridFunction& u);

}  // namespace fsg

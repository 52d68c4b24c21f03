#include "fsg/kernels.hpp"

#include <algorithm>

namespace fsg::kernels {

Mode& mode() {
  static Mode m = Mode::parallel;
  return m;
}

double dot(std::span<const double> a, std::span<const double> b) {
  const std::size_t n = a.size();
  const std::ptrdiff_t nblocks = static_cast<std::ptrdiff_t>((n + kBlock - 1) / kBlock);
  std::vector<double> partial(static_cast<std::size_t>(nblocks));
#pragma omp parallel for schedule(static) if (par(n))
  for (std::ptrdiff_t jb = 0; jb < nblocks; ++jb) {
    const std::size_t lo = static_cast<std::size_t>(jb) * kBlock;
    const std::size_t hi = std::min(n, lo + kBlock);
    Kahan acc;
    for (std::size_t i = lo; i < hi; ++i)
      acc.add(a[i] * b[i]);
    partial[static_cast<std::size_t>(jb)] = acc.value();
  }
  Kahan total;
  for (double v : partial)
    total.add(v);
  return total.value();
}

double max_abs(std::span<const double> a) {
  const std::size_t n = a.size();
  const std::ptrdiff_t nblocks = static_cast<std::ptrdiff_t>((n + kBlock - 1) / kBlock);
  std::vector<double> partial(static_cast<std::size_t>(nblocks), 0.0);
#pragma omp parallel for schedule(static) if (par(n))
  for (std::ptrdiff_t jb = 0; jb < nblocks; ++jb) {
    const std::size_t lo = static_cast<std::size_t>(jb) * kBlock;
    const std::size_t hi = std::min(n, lo + kBlock);
    double m = 0.0;
    for (std::size_t i = lo; i < hi; ++i)
      m = std::max(m, std::abs(a[i]));
    partial[static_cast<std::size_t>(jb)] = m;
  }
  double m = 0.0;
  for (double v : partial)
    m = std::max(m, v);
  return m;
}

void axpby(double alpha, std::span<const double> x, double beta,
           std::span<const double> y, std::span<double> out) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static) if (par(out.size()))
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const std::size_t k = static_cast<std::size_t>(i);
    out[k] = alpha * x[k] + beta * y[k];
  }
}

void hadamard(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(out.size());
#pragma omp parallel for schedule(static) if (par(out.size()))
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const std::size_t k = static_cast<std::size_t>(i);
    out[k] = a[k] * b[k];
  }
}

void laplacian5(const double* u, double* out, std::size_t m, double inv_h2) {
  const std::ptrdiff_t M = static_cast<std::ptrdiff_t>(m);
#pragma omp parallel for schedule(static) if (par(m * m))
  for (std::ptrdiff_t j = 0; j < M; ++j) {
    const std::size_t row = static_cast<std::size_t>(j) * m;
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t idx = row + i;
      double s = -4.0 * u[idx];
      if (i > 0) s += u[idx - 1];
      if (i + 1 < m) s += u[idx + 1];
      if (j > 0) s += u[idx - m];
      if (static_cast<std::size_t>(j) + 1 < m) s += u[idx + m];
      out[idx] = s * inv_h2;
    }
  }
}

void helmholtz(double mass, double nu_sigma, double inv_h2, const double* diag,
               const double* u, double* out, std::size_t m) {
  const double c = nu_sigma * inv_h2;
  const std::ptrdiff_t M = static_cast<std::ptrdiff_t>(m);
#pragma omp parallel for schedule(static) if (par(m * m))
  for (std::ptrdiff_t j = 0; j < M; ++j) {
    const std::size_t row = static_cast<std::size_t>(j) * m;
    for (std::size_t i = 0; i < m; ++i) {
      const std::size_t idx = row + i;
      double s = -4.0 * u[idx];
      if (i > 0) s += u[idx - 1];
      if (i + 1 < m) s += u[idx + 1];
      if (j > 0) s += u[idx - m];
      if (static_cast<std::size_t>(j) + 1 < m) s += u[idx + m];
      out[idx] = (mass + diag[idx]) * u[idx] - c * s;
    }
  }
}

}  // namespace fsg::kernels

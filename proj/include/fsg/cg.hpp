#pragma once

#include "fsg/kernels.hpp"

#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace fsg {

struct NoConvergence : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CgOptions {
  double rel_tol = 1e-14;
  double abs_tol = 1e-11;
  std::size_t max_iterations = 0;  // 0: 10 * n
};

struct CgResult {
  std::size_t iterations = 0;
  double residual = 0.0;
};

// Jacobi-preconditioned conjugate gradients for symmetric positive definite
// operators.  x carries the initial guess on entry.  Stops when the residual
// two-norm falls below max(abs_tol, rel_tol*|rhs|); throws NoConvergence at
// the iteration cap.  monitor(iteration, x) runs after every update.
template <class Apply, class Monitor>
CgResult cg_solve(Apply&& apply, std::span<const double> rhs,
                  std::span<const double> inv_diag, std::span<double> x,
                  const CgOptions& opt, Monitor&& monitor) {
  namespace k = kernels;
  const std::size_t n = rhs.size();
  const std::size_t cap = opt.max_iterations ? opt.max_iterations : 10 * n;
  std::vector<double> r(n), z(n), p(n), q(n);

  apply(x.data(), q.data());
  k::axpby(1.0, rhs, -1.0, q, r);
  const double bnorm = std::sqrt(k::dot(rhs, rhs));
  const double target = std::max(opt.abs_tol, opt.rel_tol * bnorm);
  double rnorm = std::sqrt(k::dot(r, r));
  if (rnorm <= target)
    return {0, rnorm};

  k::hadamard(inv_diag, r, z);
  p = z;
  double rho = k::dot(r, z);
  for (std::size_t it = 1; it <= cap; ++it) {
    apply(p.data(), q.data());
    const double pq = k::dot(p, q);
    if (!(pq > 0.0))
      throw NoConvergence("cg: operator is not positive definite on a search direction");
    const double alpha = rho / pq;
    k::axpby(1.0, x, alpha, p, x);
    k::axpby(1.0, r, -alpha, q, r);
    monitor(it, std::span<const double>(x));
    rnorm = std::sqrt(k::dot(r, r));
    if (rnorm <= target)
      return {it, rnorm};
    k::hadamard(inv_diag, r, z);
    const double rho_next = k::dot(r, z);
    k::axpby(1.0, z, rho_next / rho, p, p);
    rho = rho_next;
  }
  throw NoConvergence("cg: iteration cap reached before the residual target");
}

template <class Apply>
CgResult cg_solve(Apply&& apply, std::span<const double> rhs,
                  std::span<const double> inv_diag, std::span<double> x,
                  const CgOptions& opt) {
  return cg_solve(std::forward<Apply>(apply), rhs, inv_diag, x, opt,
                  [](std::size_t, std::span<const double>) {});
}

}  // namespace fsg

#pragma once

#include "fsg/mesh.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace fsg {

// Coefficient evaluation backend.  Closed forms are exact antiderivatives
// evaluated cancellation-free; the Gauss-Kronrod path integrates the defining
// kernels numerically and doubles as the independent test oracle.
enum class CoeffBackend { closed_form, gauss_kronrod };

// Interpolation weights a_{n,k}: for k < n the kernel integral of
// (t_{n+1}^* - eta)^{-beta'} over [t_k, t_{k+1}]; for k = n the offset-power
// closed form sigma^{1-beta'} tau_{n+1}^{1-beta'} / Gamma(2-beta').
double coeff_a(std::size_t n, std::size_t k, const TemporalMesh& mesh,
               double beta_prime, CoeffBackend backend = CoeffBackend::closed_form);

// Correction weights b_{n,k}: (2/(t_{k+2}-t_k)) times the kernel integral of
// (t_{n+1}^* - eta)^{-beta'} (eta - t_{k+1/2}) over [t_k, t_{k+1}], divided by
// Gamma(1-beta').  Requires 0 <= k <= n-1.
double coeff_b(std::size_t n, std::size_t k, const TemporalMesh& mesh,
               double beta_prime, CoeffBackend backend = CoeffBackend::closed_form);

// One level of discrete-derivative weights g_{n,1..n} with the monotonicity
// (P1) and offset-dominance (P2) flags evaluated at construction.
struct CoeffRow {
  std::size_t level = 0;      // n
  double beta_prime = 0.0;
  double sigma = 0.0;
  std::vector<double> g;      // 1-based: g[k] = g_{n,k}; g[0] unused
  bool p1 = false;            // g_{n,k+1} > g_{n,k} > 0
  bool p2 = false;            // (2*sigma-1) g_{n,n} > sigma g_{n,n-1}; vacuous at n = 1

  double last() const { return g[level]; }
};

CoeffRow coeff_row(std::size_t n, const TemporalMesh& mesh, double beta_prime,
                   CoeffBackend backend = CoeffBackend::closed_form);

// All rows n = 1..N; rows are independent and generated concurrently.
std::vector<CoeffRow> coeff_rows(const TemporalMesh& mesh, double beta_prime,
                                 CoeffBackend backend = CoeffBackend::closed_form);

// Discrete Caputo derivative at t_n^*: sum_{k=1}^n g_{n,k} (v^k - v^{k-1}).
// history holds v^0..v^n.
double apply_caputo(const CoeffRow& row, std::span<const double> history);

// Exact Caputo derivative of t^mu at time t > 0 for order in (0,1) or (1,2).
double caputo_exact_power(double mu, double order, double t);

struct PropertyReport {
  double beta_prime = 0.0;
  double sigma = 0.0;
  bool p1_all = false;
  bool p2_all = false;
  std::vector<std::size_t> p1_failures;  // levels where P1 fails
  std::vector<std::size_t> p2_failures;
  double rho = 0.0;   // P4 step-ratio constant
  double m_c = 0.0;   // P3: measured minimal constant (kernel integrals by quadrature)
};

// Reports the per-row properties; never throws on a property failure.
PropertyReport verify_properties(const std::vector<CoeffRow>& rows,
                                 const TemporalMesh& mesh);

}  // namespace fsg

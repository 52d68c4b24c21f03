#pragma once

#include <cstddef>
#include <vector>

namespace fsg {

// Order bundle for the order-reduced formulation: the wave-type order
// alpha in (1,2) is split into two half-order derivatives of order
// beta = alpha/2, and the offset parameter sigma = 1 - beta/2 fixes the
// evaluation points t_n^* of the time discretization.  sigma is always
// derived, never set independently.
struct FractionalOrder {
  double alpha;  // in (1,2)
  double beta;   // alpha/2, in (1/2,1)
  double sigma;  // 1 - beta/2, in (5/8,3/4)

  static FractionalOrder from_alpha(double alpha);
};

// Offset parameter for a general sub-order beta' in (0,1).
double sigma_for(double beta_prime);

// Time mesh 0 = t_0 < t_1 < ... < t_N = T with offset points
// t_n^* = t_n - (1-sigma)*tau_n, tau_n = t_n - t_{n-1}.
//
// The standard graded build places t_n = T*(n/N)^r directly from the power
// formula at each n (no cumulative sums) and pins t_N = T.  Arbitrary node
// sets are accepted through from_nodes() and re-validated against the same
// invariants.
class TemporalMesh {
public:
  static TemporalMesh graded(double T, std::size_t N, double r, double sigma);
  static TemporalMesh from_nodes(std::vector<double> nodes, double sigma);

  std::size_t steps() const { return N_; }
  double final_time() const { return nodes_.back(); }
  double grading() const { return r_; }  // 0 for raw-node meshes
  double sigma() const { return sigma_; }

  double t(std::size_t n) const { return nodes_[n]; }    // n = 0..N
  double tau(std::size_t n) const { return steps_[n]; }  // n = 1..N
  double star(std::size_t n) const { return star_[n]; }  // n = 1..N

private:
  TemporalMesh() = default;
  void finalize();  // fills steps_/star_ and validates the invariants

  std::size_t N_ = 0;
  double r_ = 0.0;
  double sigma_ = 0.0;
  std::vector<double> nodes_;  // [0..N]
  std::vector<double> steps_;  // [1..N], slot 0 unused
  std::vector<double> star_;   // [1..N], slot 0 unused
};

// Largest step ratio max_k tau_k / tau_{k+1}.
double mesh_ratio_rho(const TemporalMesh& mesh);

// Measured quasi-graded step constant: max_n tau_n / (tau_1^{1/r} t_n^{1-1/r}).
// Defined only for meshes built with a known grading exponent.
double quasi_graded_step_bound(const TemporalMesh& mesh);

}  // namespace fsg

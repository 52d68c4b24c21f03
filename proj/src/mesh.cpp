#include "fsg/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fsg {

FractionalOrder FractionalOrder::from_alpha(double alpha) {
  if (!(alpha > 1.0 && alpha < 2.0))
    throw std::invalid_argument("FractionalOrder: alpha must lie in (1,2)");
  FractionalOrder o;
  o.alpha = alpha;
  o.beta = 0.5 * alpha;
  o.sigma = 1.0 - 0.5 * o.beta;
  return o;
}

double sigma_for(double beta_prime) {
  if (!(beta_prime > 0.0 && beta_prime < 1.0))
    throw std::invalid_argument("sigma_for: order must lie in (0,1)");
  return 1.0 - 0.5 * beta_prime;
}

TemporalMesh TemporalMesh::graded(double T, std::size_t N, double r, double sigma) {
  if (!(T > 0.0))
    throw std::invalid_argument("TemporalMesh: final time must be positive");
  if (N < 2)
    throw std::invalid_argument("TemporalMesh: need at least two steps");
  if (!(r >= 1.0))
    throw std::invalid_argument("TemporalMesh: grading exponent must be >= 1");
  TemporalMesh m;
  m.N_ = N;
  m.r_ = r;
  m.sigma_ = sigma;
  m.nodes_.resize(N + 1);
  for (std::size_t n = 0; n <= N; ++n)
    m.nodes_[n] = T * std::pow(double(n) / double(N), r);
  m.nodes_[N] = T;  // pin the final node bit-exactly
  m.finalize();
  return m;
}

TemporalMesh TemporalMesh::from_nodes(std::vector<double> nodes, double sigma) {
  if (nodes.size() < 3)
    throw std::invalid_argument("TemporalMesh: need at least two steps");
  if (nodes.front() != 0.0)
    throw std::invalid_argument("TemporalMesh: t_0 must be 0");
  TemporalMesh m;
  m.N_ = nodes.size() - 1;
  m.r_ = 0.0;
  m.sigma_ = sigma;
  m.nodes_ = std::move(nodes);
  m.finalize();
  return m;
}

void TemporalMesh::finalize() {
  if (!(sigma_ > 0.5 && sigma_ < 1.0))
    throw std::invalid_argument("TemporalMesh: sigma must lie in (1/2,1)");
  steps_.assign(N_ + 1, 0.0);
  star_.assign(N_ + 1, 0.0);
  for (std::size_t n = 1; n <= N_; ++n) {
    steps_[n] = nodes_[n] - nodes_[n - 1];
    if (!(steps_[n] > 0.0))
      throw std::invalid_argument("TemporalMesh: nodes must be strictly increasing");
    star_[n] = nodes_[n] - (1.0 - sigma_) * steps_[n];
  }
}

double mesh_ratio_rho(const TemporalMesh& mesh) {
  double rho = 0.0;
  for (std::size_t k = 1; k + 1 <= mesh.steps(); ++k)
    rho = std::max(rho, mesh.tau(k) / mesh.tau(k + 1));
  return rho;
}

double quasi_graded_step_bound(const TemporalMesh& mesh) {
  const double r = mesh.grading();
  if (!(r > 0.0))
    throw std::logic_error("quasi_graded_step_bound: grading exponent unknown");
  const double tau1_root = std::pow(mesh.tau(1), 1.0 / r);
  double bound = 0.0;
  for (std::size_t n = 1; n <= mesh.steps(); ++n) {
    const double denom = tau1_root * std::pow(mesh.t(n), 1.0 - 1.0 / r);
    bound = std::max(bound, mesh.tau(n) / denom);
  }
  return bound;
}

}  // namespace fsg

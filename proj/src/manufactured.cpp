#include "fsg/manufactured.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fsg {

namespace {
constexpr double kPi = std::numbers::pi;

double shape(double x, double y) {
  return std::sin(kPi * x) * std::sin(kPi * y);
}
}  // namespace

double example1_exact(double x, double y, double t, double alpha) {
  return (t + std::pow(t, alpha)) * shape(x, y);
}

double example1_exact_laplacian(double x, double y, double t, double alpha) {
  return -2.0 * kPi * kPi * (t + std::pow(t, alpha)) * shape(x, y);
}

// The time part contributes D_t^alpha t = 0 and D_t^alpha t^alpha = Gamma(alpha+1),
// so the forcing closes the balance exactly:
//   g = Gamma(alpha+1) S + 2 nu pi^2 (t + t^alpha) S + sin((t + t^alpha) S).
double example1_forcing(double x, double y, double t, double alpha, double nu) {
  const double S = shape(x, y);
  const double w = t + std::pow(t, alpha);
  return std::tgamma(alpha + 1.0) * S + 2.0 * nu * kPi * kPi * w * S + std::sin(w * S);
}

ProblemSpec example1_spec(double alpha) {
  ProblemSpec s;
  s.order = FractionalOrder::from_alpha(alpha);
  s.nu = 0.1;
  s.kappa = 1.0;
  s.length = 1.0;
  s.final_time = 0.5;
  s.psi = [](double, double) { return 0.0; };
  // u_t = (1 + alpha t^{alpha-1}) S -> S as t -> 0+ since alpha > 1
  s.phi = [](double x, double y) { return shape(x, y); };
  s.laplacian_phi = [](double x, double y) { return -2.0 * kPi * kPi * shape(x, y); };
  s.forcing = [alpha](double x, double y, double t) {
    return example1_forcing(x, y, t, alpha, 0.1);
  };
  return s;
}

ProblemSpec example2_spec(double alpha) {
  ProblemSpec s;
  s.order = FractionalOrder::from_alpha(alpha);
  s.nu = 1.0;
  s.kappa = 1.0;
  s.length = kPi;
  s.final_time = 0.5;
  s.psi = [](double x, double y) { return std::exp(std::cos(x) * std::cos(y)); };
  s.phi = [](double, double) { return 0.0; };
  s.laplacian_phi = [](double, double) { return 0.0; };
  // no forcing; psi does not vanish on the boundary
  s.initial_boundary_from_psi = true;
  return s;
}

double PowerFn::value(double t) const { return std::pow(t, mu); }
double PowerFn::d1(double t) const { return mu * std::pow(t, mu - 1.0); }
double PowerFn::d2(double t) const { return mu * (mu - 1.0) * std::pow(t, mu - 2.0); }

PowerFn scalar_test_fn(double mu) {
  if (!((mu > 0.0 && mu < 1.0) || (mu > 1.0 && mu < 2.0)))
    throw std::invalid_argument("scalar_test_fn: mu must lie in (0,1) or (1,2)");
  return PowerFn{mu};
}

}  // namespace fsg

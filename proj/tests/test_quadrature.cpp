#include "fsg/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace fsg;

namespace {
double beta_fn(double a, double b) {
  return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}
}  // namespace

TEST_CASE("gk15 integrates smooth functions") {
  auto e = quad::gk15([](double x) { return x * x * x - 2.0 * x + 1.0; }, -1.0, 2.0);
  CHECK(e.value == doctest::Approx(15.0 / 4.0 - 3.0 + 3.0).epsilon(1e-14));
  e = quad::gk15([](double x) { return std::sin(x); }, 0.0, 3.141592653589793);
  CHECK(e.value == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(e.error < 1e-10);
}

TEST_CASE("midpoint moment of a symmetric interval vanishes") {
  // with the kernel weight replaced by 1 the first moment about the midpoint
  // integrates to zero
  auto e = quad::gk15([](double x) { return x - 0.65; }, 0.3, 1.0);
  CHECK(std::abs(e.value) < 1e-16);
}

TEST_CASE("adaptive rule reaches tight tolerances") {
  const double v = quad::adaptive([](double x) { return std::exp(-x * x); }, 0.0, 5.0, 1e-13);
  CHECK(v == doctest::Approx(0.5 * std::sqrt(3.141592653589793)).epsilon(1e-12));
  // oscillatory
  const double w = quad::adaptive([](double x) { return std::cos(40.0 * x); }, 0.0, 1.0, 1e-13);
  CHECK(w == doctest::Approx(std::sin(40.0) / 40.0).epsilon(1e-11));
  CHECK(quad::adaptive([](double) { return 1.0; }, 2.0, 2.0) == 0.0);
}

TEST_CASE("graded endpoint rule handles weak singularities at both ends") {
  // int_0^1 s^{-0.9} (1-s)^{-0.5} ds = B(0.1, 0.5)
  const double exact = beta_fn(0.1, 0.5);
  const double v = quad::graded_endpoints(
      [](double d) { return std::pow(d, -0.9) * std::pow(1.0 - d, -0.5); },
      [](double d) { return std::pow(1.0 - d, -0.9) * std::pow(d, -0.5); },
      0.0, 1.0, -0.9, -0.5);
  CHECK(v == doctest::Approx(exact).epsilon(1e-12));
  // regular endpoints reduce to a plain composite rule
  const double w = quad::graded_endpoints(
      [](double d) { return std::sin(d); },
      [](double d) { return std::sin(1.0 - d); }, 0.0, 1.0, 0.0, 0.0);
  CHECK(w == doctest::Approx(1.0 - std::cos(1.0)).epsilon(1e-13));
  CHECK_THROWS_AS(quad::graded_endpoints([](double) { return 1.0; },
                                         [](double) { return 1.0; }, 0.0, 1.0, -1.0, 0.0),
                  std::invalid_argument);
}

TEST_CASE("numerical Caputo derivative matches power-law closed forms") {
  // order in (0,1): D^bp t^mu = Gamma(mu+1)/Gamma(mu+1-bp) t^{mu-bp}
  for (double bp : {0.55, 0.75, 0.95}) {
    for (double mu : {0.6, 0.95, 1.5, 1.9}) {
      const double t = 0.7;
      const double exact =
          std::tgamma(mu + 1.0) / std::tgamma(mu + 1.0 - bp) * std::pow(t, mu - bp);
      const double num = quad::caputo_from_d1(
          bp, [mu](double s) { return mu * std::pow(s, mu - 1.0); }, t, mu - 1.0);
      CHECK(num == doctest::Approx(exact).epsilon(1e-11));
    }
  }
  // order in (1,2) via the second derivative
  for (double alpha : {1.1, 1.5, 1.9}) {
    const double mu = alpha;  // D^alpha t^alpha = Gamma(alpha+1), constant in t
    const double num = quad::caputo_from_d2(
        alpha, [mu](double s) { return mu * (mu - 1.0) * std::pow(s, mu - 2.0); }, 0.42,
        mu - 2.0);
    CHECK(num == doctest::Approx(std::tgamma(alpha + 1.0)).epsilon(1e-11));
  }
  // linear part drops out entirely
  const double zero = quad::caputo_from_d2(1.5, [](double) { return 0.0; }, 0.3, 0.0);
  CHECK(std::abs(zero) < 1e-14);
  CHECK_THROWS_AS(quad::caputo_from_d1(1.5, [](double) { return 0.0; }, 1.0, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(quad::caputo_from_d2(0.5, [](double) { return 0.0; }, 1.0, 0.0),
                  std::invalid_argument);
}

#include "fsg/manufactured.hpp"

#include "fsg/grid.hpp"
#include "fsg/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <numbers>
#include <random>

using namespace fsg;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("closed-form benchmark solution") {
  CHECK(example1_exact(0.3, 0.8, 0.0, 1.5) == 0.0);  // psi = 0
  // (0.5+0.5^1.5) at the domain center
  CHECK(example1_exact(0.5, 0.5, 0.5, 1.5) ==
        doctest::Approx(0.8535533905932737).epsilon(1e-14));
  // u/t -> phi = sin(pi x) sin(pi y) as t -> 0 since alpha > 1
  const double x = 0.37, y = 0.61, t = 1e-10;
  CHECK(example1_exact(x, y, t, 1.5) / t ==
        doctest::Approx(std::sin(kPi * x) * std::sin(kPi * y)).epsilon(1e-4));
  // analytic Laplacian
  CHECK(example1_exact_laplacian(x, y, 0.4, 1.5) ==
        doctest::Approx(-2.0 * kPi * kPi * example1_exact(x, y, 0.4, 1.5)).epsilon(1e-13));
}

TEST_CASE("forcing closes the balance at t = 0") {
  for (double alpha : {1.1, 1.5, 1.9}) {
    const double S = std::sin(kPi * 0.25) * std::sin(kPi * 0.7);
    CHECK(example1_forcing(0.25, 0.7, 0.0, alpha, 0.1) ==
          doctest::Approx(std::tgamma(alpha + 1.0) * S).epsilon(1e-13));
  }
}

TEST_CASE("time-derivative contribution matches the power-law oracle") {
  // D^alpha (t + t^alpha) = Gamma(alpha+1): the linear part drops and the
  // power part is constant
  for (double alpha : {1.1, 1.5, 1.9}) {
    const double num = quad::caputo_from_d2(
        alpha,
        [alpha](double s) { return alpha * (alpha - 1.0) * std::pow(s, alpha - 2.0); }, 0.37,
        alpha - 2.0);
    CHECK(num == doctest::Approx(std::tgamma(alpha + 1.0)).epsilon(1e-11));
  }
}

TEST_CASE("pde residual of the manufactured pair under the numerical oracle") {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> ux(0.05, 0.95), ut(0.05, 0.5);
  for (double alpha : {1.1, 1.5, 1.9}) {
    for (int trial = 0; trial < 5; ++trial) {
      const double x = ux(rng), y = ux(rng), t = ut(rng);
      const double S = std::sin(kPi * x) * std::sin(kPi * y);
      const double dt_alpha =
          S * quad::caputo_from_d2(
                  alpha,
                  [alpha](double s) { return alpha * (alpha - 1.0) * std::pow(s, alpha - 2.0); },
                  t, alpha - 2.0);
      const double residual = dt_alpha - 0.1 * example1_exact_laplacian(x, y, t, alpha) +
                              std::sin(example1_exact(x, y, t, alpha)) -
                              example1_forcing(x, y, t, alpha, 0.1);
      CHECK(std::abs(residual) <= 1e-5);
    }
  }
}

TEST_CASE("problem data for the unknown-solution benchmark") {
  const ProblemSpec s = example2_spec(1.5);
  CHECK(s.nu == 1.0);
  CHECK(s.kappa == 1.0);
  CHECK(s.length == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(s.final_time == 0.5);
  CHECK(s.psi(kPi / 2.0, 1.234) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(s.psi(0.0, 0.0) == doctest::Approx(std::exp(1.0)).epsilon(1e-14));
  CHECK(s.phi(0.3, 0.4) == 0.0);
  CHECK(s.laplacian_phi(0.3, 0.4) == 0.0);
  CHECK_FALSE(static_cast<bool>(s.forcing));
  CHECK(s.initial_boundary_from_psi);
}

TEST_CASE("zero initial velocity collapses the shift") {
  // with phi = 0 the displacement equals the shifted field at every level
  const ProblemSpec spec = example2_spec(1.3);
  const auto mesh = TemporalMesh::graded(spec.final_time, 4, 2.0, spec.order.sigma);
  const auto grid = SpatialGrid::make(spec.length, 6);
  const auto s = run(spec, mesh, grid);
  for (std::size_t n = 0; n <= 4; ++n) {
    const auto u = s.displacement(n);
    for (int j = 1; j <= grid.interior(); ++j)
      for (int i = 1; i <= grid.interior(); ++i)
        CHECK(u(i, j) == s.ubar[n](i, j));
  }
}

TEST_CASE("analytic Laplacian of the solution vs the five-point stencil") {
  const double alpha = 1.5, t = 0.3;
  double prev_err = 0.0;
  for (int M : {8, 16, 32}) {
    const auto g = SpatialGrid::make(1.0, M);
    const auto u = GridFunction::sample(
        g, [&](double x, double y) { return example1_exact(x, y, t, alpha); });
    const auto lap = laplacian_5pt(u);
    double err = 0.0;
    for (int j = 1; j <= g.interior(); ++j)
      for (int i = 1; i <= g.interior(); ++i)
        err = std::max(err, std::abs(lap(i, j) -
                                     example1_exact_laplacian(g.x(i), g.x(j), t, alpha)));
    if (prev_err > 0.0) {
      const double rate = std::log2(prev_err / err);
      CHECK(rate == doctest::Approx(2.0).epsilon(0.1));
    }
    prev_err = err;
  }
}

TEST_CASE("scalar power test functions") {
  const auto f = scalar_test_fn(0.75);
  CHECK(f.value(1.0) == 1.0);
  CHECK(f.value(0.5) == doctest::Approx(std::pow(0.5, 0.75)).epsilon(1e-15));
  CHECK(f.d1(0.5) == doctest::Approx(0.75 * std::pow(0.5, -0.25)).epsilon(1e-14));
  CHECK(f.d2(0.5) ==
        doctest::Approx(0.75 * (-0.25) * std::pow(0.5, -1.25)).epsilon(1e-14));
  CHECK_NOTHROW(scalar_test_fn(1.9));
  CHECK_THROWS_AS(scalar_test_fn(1.0), std::invalid_argument);
  CHECK_THROWS_AS(scalar_test_fn(2.5), std::invalid_argument);
  CHECK_THROWS_AS(scalar_test_fn(0.0), std::invalid_argument);
}

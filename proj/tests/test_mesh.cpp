#include "fsg/mesh.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace fsg;

TEST_CASE("fractional order bundle") {
  const FractionalOrder o = FractionalOrder::from_alpha(1.5);
  CHECK(o.alpha == 1.5);
  CHECK(o.beta == doctest::Approx(0.75).epsilon(1e-15));
  CHECK(o.sigma == doctest::Approx(0.625).epsilon(1e-15));
  CHECK_THROWS_AS(FractionalOrder::from_alpha(1.0), std::invalid_argument);
  CHECK_THROWS_AS(FractionalOrder::from_alpha(2.0), std::invalid_argument);
  CHECK_THROWS_AS(FractionalOrder::from_alpha(0.5), std::invalid_argument);
  CHECK(sigma_for(0.5) == doctest::Approx(0.75).epsilon(1e-15));
  CHECK_THROWS_AS(sigma_for(1.0), std::invalid_argument);
}

TEST_CASE("graded mesh nodes") {
  SUBCASE("uniform") {
    const auto m = TemporalMesh::graded(1.0, 2, 1.0, 0.75);
    CHECK(m.t(0) == 0.0);
    CHECK(m.t(1) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(m.t(2) == 1.0);
  }
  SUBCASE("power placement") {
    const auto m = TemporalMesh::graded(0.5, 4, 2.0, 0.75);
    CHECK(m.t(3) == doctest::Approx(0.28125).epsilon(1e-15));  // 0.5*(3/4)^2
  }
  SUBCASE("offset point at the final level") {
    // alpha = 1.5 -> sigma = 0.625; t_8^* = 1 - 0.375*(1 - 49/64)
    const auto order = FractionalOrder::from_alpha(1.5);
    const auto m = TemporalMesh::graded(1.0, 8, 2.0, order.sigma);
    CHECK(m.star(8) == doctest::Approx(0.912109375).epsilon(1e-15));
  }
  SUBCASE("final node pinned") {
    const auto m = TemporalMesh::graded(0.3, 7, 1.7, 0.7);
    CHECK(m.t(7) == 0.3);
    CHECK(m.final_time() == 0.3);
  }
}

TEST_CASE("graded mesh rejects bad input") {
  CHECK_THROWS_AS(TemporalMesh::graded(1.0, 1, 1.0, 0.75), std::invalid_argument);
  CHECK_THROWS_AS(TemporalMesh::graded(1.0, 4, 0.9, 0.75), std::invalid_argument);
  CHECK_THROWS_AS(TemporalMesh::graded(0.0, 4, 1.0, 0.75), std::invalid_argument);
  CHECK_THROWS_AS(TemporalMesh::graded(-1.0, 4, 1.0, 0.75), std::invalid_argument);
  CHECK_THROWS_AS(TemporalMesh::graded(1.0, 4, 1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(TemporalMesh::graded(1.0, 4, 1.0, 1.0), std::invalid_argument);
}

TEST_CASE("raw node constructor re-validates") {
  CHECK_NOTHROW(TemporalMesh::from_nodes({0.0, 0.2, 0.3, 1.0}, 0.75));
  CHECK_THROWS_AS(TemporalMesh::from_nodes({0.1, 0.2, 0.3}, 0.75), std::invalid_argument);
  CHECK_THROWS_AS(TemporalMesh::from_nodes({0.0, 0.3, 0.2}, 0.75), std::invalid_argument);
  CHECK_THROWS_AS(TemporalMesh::from_nodes({0.0, 1.0}, 0.75), std::invalid_argument);
}

TEST_CASE("offset points sit strictly inside each step") {
  for (double r : {1.0, 1.5, 2.0, 3.0}) {
    for (double sigma : {0.55, 0.625, 0.75 - 1e-6}) {
      const auto m = TemporalMesh::graded(0.5, 33, r, sigma);
      for (std::size_t n = 1; n <= m.steps(); ++n) {
        CHECK(m.star(n) > m.t(n - 1));
        CHECK(m.star(n) < m.t(n));
      }
    }
  }
}

TEST_CASE("step ratio") {
  SUBCASE("uniform mesh gives 1") {
    const auto m = TemporalMesh::graded(1.0, 10, 1.0, 0.75);
    CHECK(mesh_ratio_rho(m) == doctest::Approx(1.0).epsilon(1e-13));
  }
  SUBCASE("graded r=2, N=4: steps scale like 2k-1, largest ratio 5/7") {
    const auto m = TemporalMesh::graded(1.0, 4, 2.0, 0.75);
    // brute-force oracle over the step ratios
    double oracle = 0.0;
    for (std::size_t k = 1; k <= 3; ++k)
      oracle = std::max(oracle, m.tau(k) / m.tau(k + 1));
    CHECK(oracle == doctest::Approx(5.0 / 7.0).epsilon(1e-13));
    CHECK(mesh_ratio_rho(m) == doctest::Approx(5.0 / 7.0).epsilon(1e-13));
  }
  SUBCASE("graded meshes stay below 1 and satisfy the 7/4 hypothesis") {
    for (double r : {1.0, 1.5, 2.0, 3.0})
      for (std::size_t N : {8u, 32u, 128u}) {
        const auto m = TemporalMesh::graded(0.5, N, r, 0.6);
        CHECK(mesh_ratio_rho(m) <= 1.0 + 1e-12);
        CHECK(mesh_ratio_rho(m) <= 1.75);
      }
  }
}

TEST_CASE("steps increase monotonically for r >= 1") {
  for (double r : {1.0, 1.3, 2.0, 3.0}) {
    const auto m = TemporalMesh::graded(2.0, 50, r, 0.7);
    for (std::size_t n = 1; n < m.steps(); ++n)
      CHECK(m.tau(n) <= m.tau(n + 1) * (1.0 + 1e-14));
  }
}

TEST_CASE("quasi-graded step bound is bounded across refinements") {
  // tau_n <= C tau_1^{1/r} t_n^{1-1/r}; by the mean value theorem C <= r on
  // the standard graded family, uniformly in N.
  for (double r : {1.0, 1.5, 2.0, 3.0}) {
    for (std::size_t N : {16u, 32u, 64u, 128u, 256u, 512u}) {
      const auto m = TemporalMesh::graded(1.0, N, r, 0.7);
      const double bound = quasi_graded_step_bound(m);
      CHECK(bound >= 1.0 - 1e-12);
      CHECK(bound <= r * (1.0 + 1e-12));
    }
  }
  const auto raw = TemporalMesh::from_nodes({0.0, 0.5, 1.0}, 0.7);
  CHECK_THROWS_AS(quasi_graded_step_bound(raw), std::logic_error);
}

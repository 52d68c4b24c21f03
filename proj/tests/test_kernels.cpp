#include "fsg/kernels.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace fsg;
namespace k = kernels;

namespace {

struct ModeGuard {
  k::Mode saved = k::mode();
  ~ModeGuard() { k::mode() = saved; }
};

std::vector<double> random_vec(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (double& x : v)
    x = u(rng);
  return v;
}

}  // namespace

TEST_CASE("compensated dot against a long double reference") {
  // adversarial magnitudes: large cancelling entries plus a small tail
  std::vector<double> a, b;
  a.push_back(1e16);
  b.push_back(1.0);
  a.push_back(-1e16);
  b.push_back(1.0);
  for (int i = 0; i < 5000; ++i) {
    a.push_back(1e-8 * (i % 7 - 3));
    b.push_back(1.0);
  }
  long double ref = 0.0L;
  for (std::size_t i = 0; i < a.size(); ++i)
    ref += static_cast<long double>(a[i]) * b[i];
  const double got = k::dot(a, b);
  CHECK(got == doctest::Approx(static_cast<double>(ref)).epsilon(1e-12));
}

TEST_CASE("serial and parallel kernels agree bitwise") {
  ModeGuard guard;
  const std::size_t n = 50003;  // above the parallel cutoff, not a block multiple
  const auto a = random_vec(n, 1);
  const auto b = random_vec(n, 2);

  k::mode() = k::Mode::parallel;
  const double dot_par = k::dot(a, b);
  const double max_par = k::max_abs(a);
  std::vector<double> axpby_par(n), had_par(n);
  k::axpby(1.5, a, -0.25, b, axpby_par);
  k::hadamard(a, b, had_par);

  k::mode() = k::Mode::serial;
  CHECK(k::dot(a, b) == dot_par);
  CHECK(k::max_abs(a) == max_par);
  std::vector<double> axpby_ser(n), had_ser(n);
  k::axpby(1.5, a, -0.25, b, axpby_ser);
  k::hadamard(a, b, had_ser);
  CHECK(axpby_ser == axpby_par);
  CHECK(had_ser == had_par);
}

TEST_CASE("history combination matches the naive sum in both modes") {
  ModeGuard guard;
  const std::size_t pts = 6000, levels = 9;  // work above the parallel cutoff
  std::vector<std::vector<double>> hist(levels + 1);
  for (std::size_t l = 0; l <= levels; ++l)
    hist[l] = random_vec(pts, 100 + static_cast<unsigned>(l));
  std::vector<double> w(levels + 1);
  for (std::size_t l = 0; l <= levels; ++l)
    w[l] = 0.1 + 0.3 * double(l);

  std::vector<double> naive(pts, 0.0);
  for (std::size_t i = 0; i < pts; ++i)
    for (std::size_t l = 1; l <= levels; ++l)
      naive[i] += w[l] * (hist[l][i] - hist[l - 1][i]);

  std::vector<double> par(pts), ser(pts);
  k::mode() = k::Mode::parallel;
  k::history_combine(w, [&](std::size_t l) { return hist[l].data(); }, levels, par);
  k::mode() = k::Mode::serial;
  k::history_combine(w, [&](std::size_t l) { return hist[l].data(); }, levels, ser);
  CHECK(par == ser);
  for (std::size_t i = 0; i < pts; i += 97)
    CHECK(par[i] == doctest::Approx(naive[i]).epsilon(1e-12));
}

TEST_CASE("stencil kernels match a naive reference") {
  ModeGuard guard;
  const std::size_t m = 201;  // m*m above the parallel cutoff
  const auto u = random_vec(m * m, 7);
  const auto diag = random_vec(m * m, 8);
  const double inv_h2 = 1.0 / (0.03 * 0.03);

  auto naive_lap = [&](std::size_t i, std::size_t j) {
    auto at = [&](std::ptrdiff_t ii, std::ptrdiff_t jj) -> double {
      if (ii < 0 || jj < 0 || ii >= std::ptrdiff_t(m) || jj >= std::ptrdiff_t(m))
        return 0.0;
      return u[std::size_t(jj) * m + std::size_t(ii)];
    };
    return (at(i - 1, j) + at(i + 1, j) + at(i, j - 1) + at(i, j + 1) - 4.0 * at(i, j)) * inv_h2;
  };

  std::vector<double> lap_par(m * m), lap_ser(m * m), helm(m * m);
  k::mode() = k::Mode::parallel;
  k::laplacian5(u.data(), lap_par.data(), m, inv_h2);
  k::helmholtz(3.5, 0.2, inv_h2, diag.data(), u.data(), helm.data(), m);
  k::mode() = k::Mode::serial;
  k::laplacian5(u.data(), lap_ser.data(), m, inv_h2);
  CHECK(lap_par == lap_ser);

  for (std::size_t j = 0; j < m; j += 13)
    for (std::size_t i = 0; i < m; i += 13) {
      const std::size_t idx = j * m + i;
      CHECK(lap_par[idx] == doctest::Approx(naive_lap(i, j)).epsilon(1e-12));
      CHECK(helm[idx] ==
            doctest::Approx((3.5 + diag[idx]) * u[idx] - 0.2 * naive_lap(i, j)).epsilon(1e-12));
    }
}

TEST_CASE("row reduction is deterministic across modes") {
  ModeGuard guard;
  const auto a = random_vec(2000, 21);
  auto row_sum = [&](std::size_t j) {
    k::Kahan acc;
    for (std::size_t i = j * 20; i < (j + 1) * 20; ++i)
      acc.add(a[i]);
    return acc.value();
  };
  k::mode() = k::Mode::parallel;
  const double rp = k::reduce_rows(100, row_sum);
  k::mode() = k::Mode::serial;
  CHECK(k::reduce_rows(100, row_sum) == rp);
}

#include "fsg/coeffs.hpp"

#include "fsg/kernels.hpp"
#include "fsg/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace fsg {

namespace {

void check_order(const TemporalMesh& mesh, double bp) {
  if (!(bp > 0.0 && bp < 1.0))
    throw std::invalid_argument("coeff: order must lie in (0,1)");
  if (std::abs(mesh.sigma() - (1.0 - 0.5 * bp)) > 1e-12)
    throw std::invalid_argument("coeff: mesh offset sigma does not match the order");
}

// x^p - y^p for x > y > 0 with the gap d = x - y supplied exactly; rewritten
// through expm1/log1p so nearly equal powers do not cancel.
double pow_diff(double y, double d, double p) {
  return std::pow(y, p) * std::expm1(p * std::log1p(d / y));
}

// Kernel moment integral of (c - eta)^{-bp} (eta - mid) over a symmetric
// interval [mid - e, mid + e] with c > mid + e.  Away from the singularity
// the integrand is nearly odd, so the closed form F(c-mid+e) - F(c-mid-e)
// with F(s) = D s^{1-bp}/(1-bp) - s^{2-bp}/(2-bp), D = c - mid, cancels
// catastrophically; the odd Taylor expansion of that difference around D is
// used instead whenever e/D is small.
double kernel_moment(double c, double mid, double e, double bp) {
  const double D = c - mid;
  if (e < 0.4 * D) {
    const double ratio = e / D;
    const double x2 = ratio * ratio;
    double term = (bp / 3.0) * ratio * x2;  // j = 3 term
    double s = term;
    for (int j = 3; j < 400; j += 2) {
      term *= (bp + j - 2) * (bp + j - 1) / double((j - 1) * (j + 2)) * x2;
      s += term;
      if (std::abs(term) <= 1e-17 * std::abs(s))
        break;
    }
    return 2.0 * std::pow(D, 2.0 - bp) * s;
  }
  auto F = [&](double s) {
    return D * std::pow(s, 1.0 - bp) / (1.0 - bp) - std::pow(s, 2.0 - bp) / (2.0 - bp);
  };
  return F(D + e) - F(D - e);
}

}  // namespace

double coeff_a(std::size_t n, std::size_t k, const TemporalMesh& mesh,
               double beta_prime, CoeffBackend backend) {
  check_order(mesh, beta_prime);
  if (k > n || n + 1 > mesh.steps())
    throw std::invalid_argument("coeff_a: index out of range");
  const double one_m = 1.0 - beta_prime;
  if (k == n)
    return std::pow(mesh.sigma(), one_m) * std::pow(mesh.tau(n + 1), one_m) /
           std::tgamma(2.0 - beta_prime);
  const double c = mesh.star(n + 1);
  if (backend == CoeffBackend::gauss_kronrod) {
    const double v = quad::adaptive(
        [&](double s) { return std::pow(c - s, -beta_prime); }, mesh.t(k), mesh.t(k + 1),
        1e-14);
    return v / std::tgamma(1.0 - beta_prime);
  }
  const double y = c - mesh.t(k + 1);
  return pow_diff(y, mesh.tau(k + 1), one_m) / std::tgamma(2.0 - beta_prime);
}

double coeff_b(std::size_t n, std::size_t k, const TemporalMesh& mesh,
               double beta_prime, CoeffBackend backend) {
  check_order(mesh, beta_prime);
  if (n < 1 || k >= n || n + 1 > mesh.steps())
    throw std::invalid_argument("coeff_b: index out of range");
  const double c = mesh.star(n + 1);
  const double tk = mesh.t(k), tk1 = mesh.t(k + 1);
  const double mid = 0.5 * (tk + tk1);
  const double e = 0.5 * (tk1 - tk);
  const double span2 = mesh.t(k + 2) - tk;
  const double gamma1 = std::tgamma(1.0 - beta_prime);
  if (backend == CoeffBackend::gauss_kronrod) {
    // fold the interval about its midpoint: the integrand
    //   w * [ (D-w)^{-bp} - (D+w)^{-bp} ],  D = c - mid,
    // is positive and evaluated cancellation-free pointwise
    const double D = c - mid;
    auto folded = [&](double w) {
      const double base = std::pow(D + w, -beta_prime);
      return w * base * std::expm1(-beta_prime * std::log1p(-2.0 * w / (D + w)));
    };
    const double v = quad::adaptive(folded, 0.0, e, 1e-14);
    return 2.0 * v / (gamma1 * span2);
  }
  return 2.0 * kernel_moment(c, mid, e, beta_prime) / (gamma1 * span2);
}

CoeffRow coeff_row(std::size_t n, const TemporalMesh& mesh, double beta_prime,
                   CoeffBackend backend) {
  check_order(mesh, beta_prime);
  if (n < 1 || n > mesh.steps())
    throw std::invalid_argument("coeff_row: level out of range");
  CoeffRow row;
  row.level = n;
  row.beta_prime = beta_prime;
  row.sigma = mesh.sigma();
  row.g.assign(n + 1, 0.0);
  if (n == 1) {
    row.g[1] = coeff_a(0, 0, mesh, beta_prime, backend) / mesh.tau(1);
  } else {
    std::vector<double> av(n), bv(n - 1);
    for (std::size_t k = 0; k < n; ++k)
      av[k] = coeff_a(n - 1, k, mesh, beta_prime, backend);
    for (std::size_t k = 0; k + 1 < n; ++k)
      bv[k] = coeff_b(n - 1, k, mesh, beta_prime, backend);
    row.g[1] = (av[0] - bv[0]) / mesh.tau(1);
    for (std::size_t k = 2; k <= n - 1; ++k)
      row.g[k] = (av[k - 1] + bv[k - 2] - bv[k - 1]) / mesh.tau(k);
    row.g[n] = (av[n - 1] + bv[n - 2]) / mesh.tau(n);
  }
  row.p1 = row.g[1] > 0.0;
  for (std::size_t k = 1; k + 1 <= n; ++k)
    if (!(row.g[k + 1] > row.g[k] && row.g[k] > 0.0))
      row.p1 = false;
  const double sg = mesh.sigma();
  row.p2 = n < 2 || (2.0 * sg - 1.0) * row.g[n] > sg * row.g[n - 1];
  return row;
}

std::vector<CoeffRow> coeff_rows(const TemporalMesh& mesh, double beta_prime,
                                 CoeffBackend backend) {
  const std::size_t N = mesh.steps();
  std::vector<CoeffRow> rows(N);
  const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(N);
#pragma omp parallel for schedule(dynamic) if (kernels::par())
  for (std::ptrdiff_t i = 0; i < count; ++i)
    rows[static_cast<std::size_t>(i)] =
        coeff_row(static_cast<std::size_t>(i) + 1, mesh, beta_prime, backend);
  return rows;
}

double apply_caputo(const CoeffRow& row, std::span<const double> history) {
  if (history.size() != row.level + 1)
    throw std::invalid_argument("apply_caputo: history length does not match level");
  kernels::Kahan acc;
  for (std::size_t k = 1; k <= row.level; ++k)
    acc.add(row.g[k] * (history[k] - history[k - 1]));
  return acc.value();
}

double caputo_exact_power(double mu, double order, double t) {
  if (!(t > 0.0))
    throw std::invalid_argument("caputo_exact_power: t must be positive");
  if (order > 0.0 && order < 1.0) {
    if (!(mu > 0.0))
      throw std::invalid_argument("caputo_exact_power: mu must be positive");
    return std::tgamma(mu + 1.0) / std::tgamma(mu + 1.0 - order) * std::pow(t, mu - order);
  }
  if (order > 1.0 && order < 2.0) {
    if (mu == 1.0)
      return 0.0;  // second derivative vanishes under the kernel
    if (!(mu > 1.0))
      throw std::invalid_argument("caputo_exact_power: mu must be 1 or exceed 1 for orders in (1,2)");
    return std::tgamma(mu + 1.0) / std::tgamma(mu + 1.0 - order) * std::pow(t, mu - order);
  }
  throw std::invalid_argument("caputo_exact_power: order must lie in (0,1) or (1,2)");
}

PropertyReport verify_properties(const std::vector<CoeffRow>& rows,
                                 const TemporalMesh& mesh) {
  if (rows.empty())
    throw std::invalid_argument("verify_properties: no rows");
  PropertyReport rep;
  rep.beta_prime = rows.front().beta_prime;
  rep.sigma = mesh.sigma();
  rep.p1_all = rep.p2_all = true;
  for (const CoeffRow& row : rows) {
    if (!row.p1) {
      rep.p1_all = false;
      rep.p1_failures.push_back(row.level);
    }
    if (!row.p2) {
      rep.p2_all = false;
      rep.p2_failures.push_back(row.level);
    }
  }
  rep.rho = mesh_ratio_rho(mesh);

  // P3: the constant is measured, never asserted.  Kernel integrals use the
  // adaptive rule away from the diagonal and the endpoint-graded rule on it.
  const double bp = rep.beta_prime;
  const double gamma1 = std::tgamma(1.0 - bp);
  double mc = 0.0;
  for (const CoeffRow& row : rows) {
    const std::size_t n = row.level;
    const double tn = mesh.t(n);
    for (std::size_t k = 1; k <= n; ++k) {
      double kernel;
      if (k == n) {
        const double tau = mesh.tau(n);
        kernel = quad::graded_endpoints(
            [&](double d) { return std::pow(tau - d, -bp); },
            [&](double d) { return std::pow(d, -bp); }, mesh.t(k - 1), mesh.t(k), 0.0, -bp);
      } else {
        kernel = quad::adaptive([&](double s) { return std::pow(tn - s, -bp); },
                                mesh.t(k - 1), mesh.t(k), 1e-12);
      }
      kernel /= gamma1;
      mc = std::max(mc, kernel / (mesh.tau(k) * row.g[k]));
    }
  }
  rep.m_c = mc;
  return rep;
}

}  // namespace fsg

#include "fsg/stepper.hpp"

#include "fsg/cg.hpp"
#include "fsg/kernels.hpp"

#include <cmath>
#include <iostream>
#include <sstream>

namespace fsg {

namespace {

namespace k = kernels;

std::ostream& log_stream(const StepperOptions& opt) {
  return opt.log ? *opt.log : std::cerr;
}

GridFunction sample_or_zero(const SpatialGrid& grid, const Field2& f) {
  if (!f)
    return GridFunction(grid);
  return GridFunction::sample(grid, f);
}

// H[i] = sum_{k=1}^{count} g[k] * (hist[k][i] - hist[k-1][i])
void field_history_sum(const CoeffRow& row, std::span<const GridFunction> hist,
                       std::size_t count, std::span<double> out) {
  k::history_combine(
      row.g, [&](std::size_t lvl) { return hist[lvl].data(); }, count, out);
}

}  // namespace

GridFunction SolverState::displacement(std::size_t n) const {
  GridFunction u = ubar[n];
  k::axpby(1.0, u.values(), mesh.t(n), phi.values(), u.values());
  return u;
}

AffineP eliminate_p(std::size_t n, const CoeffRow& row, const SolverState& s) {
  if (row.level != n)
    throw std::invalid_argument("eliminate_p: coefficient row level mismatch");
  const double sigma = s.mesh.sigma();
  const double g = row.last();
  GridFunction intercept(s.grid);
  std::vector<double> hu(intercept.size());
  field_history_sum(row, std::span<const GridFunction>(s.ubar.data(), n), n - 1, hu);
  const double* up = s.ubar[n - 1].data();
  const double* pp = s.p[n - 1].data();
  double* out = intercept.data();
  const std::ptrdiff_t sz = static_cast<std::ptrdiff_t>(intercept.size());
#pragma omp parallel for schedule(static) if (k::par(intercept.size()))
  for (std::ptrdiff_t i = 0; i < sz; ++i)
    out[i] = (-g * up[i] + hu[i] - (1.0 - sigma) * pp[i]) / sigma;
  return {g / sigma, std::move(intercept)};
}

void StepOperator::apply(const double* in, double* out) const {
  k::helmholtz(mass, nu_sigma, inv_h2, diag.data(), in, out,
               static_cast<std::size_t>(grid.interior()));
}

GridFunction StepOperator::operator()(const GridFunction& w) const {
  GridFunction out(grid);
  apply(w.data(), out.data());
  return out;
}

GridFunction apply_caputo_field(const CoeffRow& row, std::span<const GridFunction> history) {
  if (history.size() != row.level + 1)
    throw std::invalid_argument("apply_caputo_field: history length does not match level");
  GridFunction out(history.front().grid());
  field_history_sum(row, history, row.level, out.values());
  return out;
}

StepResiduals step_residuals(const SolverState& s, const ProblemSpec& spec,
                             std::size_t n, const CoeffRow& row) {
  const double sigma = s.mesh.sigma();
  const double nu = spec.nu;
  const double kap2 = spec.kappa * spec.kappa;
  const double tstar = s.mesh.star(n);
  const std::size_t sz = s.ubar[0].size();

  const GridFunction du = apply_caputo_field(row, std::span<const GridFunction>(s.ubar.data(), n + 1));
  const GridFunction dp = apply_caputo_field(row, std::span<const GridFunction>(s.p.data(), n + 1));
  const GridFunction lap_cur = laplacian_5pt(s.ubar[n]);
  GridFunction lap_prev = laplacian_5pt(s.ubar[n - 1]);
  if (n == 1)
    kernels::axpby(1.0, lap_prev.values(), 1.0, s.lap0_ghost.values(), lap_prev.values());
  GridFunction force(s.grid);
  if (spec.forcing)
    force = GridFunction::sample(s.grid, [&](double x, double y) { return spec.forcing(x, y, tstar); });

  const double tn = s.mesh.t(n), tp = s.mesh.t(n - 1);
  const double* ub_cur = s.ubar[n].data();
  const double* ub_prev = s.ubar[n - 1].data();
  const double* p_cur = s.p[n].data();
  const double* p_prev = s.p[n - 1].data();
  const double* phi = s.phi.data();
  const double* lphi = s.lap_phi.data();

  double max_a = 0.0, max_b = 0.0;
  for (std::size_t i = 0; i < sz; ++i) {
    const double u_prev = ub_prev[i] + tp * phi[i];
    const double u_cur = ub_cur[i] + tn * phi[i];
    const double lin_f = kap2 * std::sin(u_prev) + sigma * kap2 * std::cos(u_prev) * (u_cur - u_prev);
    const double res_a = dp.data()[i] -
                         nu * (sigma * lap_cur.data()[i] + (1.0 - sigma) * lap_prev.data()[i]) +
                         lin_f - nu * tstar * lphi[i] - force.data()[i];
    const double res_b = du.data()[i] - sigma * p_cur[i] - (1.0 - sigma) * p_prev[i];
    max_a = std::max(max_a, std::abs(res_a));
    max_b = std::max(max_b, std::abs(res_b));
  }
  return {max_a, max_b};
}

namespace {

void advance_level(SolverState& s, const ProblemSpec& spec, std::size_t n,
                   const StepperOptions& opt) {
  const CoeffRow row = coeff_row(n, s.mesh, spec.order.beta, opt.backend);
  const double sigma = s.mesh.sigma();
  const double g = row.last();
  const double kap2 = spec.kappa * spec.kappa;
  if (!(g * g / sigma > sigma * kap2)) {
    std::ostringstream msg;
    msg << "step operator loses positivity at level " << n
        << ": g_nn^2/sigma = " << g * g / sigma << " <= sigma*kappa^2 = " << sigma * kap2;
    throw IndefiniteOperator(msg.str());
  }

  const std::size_t m = static_cast<std::size_t>(s.grid.interior());
  const std::size_t sz = m * m;
  const double tau_n = s.mesh.tau(n);
  const double tstar = s.mesh.star(n);
  const double tprev = s.mesh.t(n - 1);

  std::vector<double> hu(sz), hp(sz);
  field_history_sum(row, std::span<const GridFunction>(s.ubar.data(), n), n - 1, hu);
  field_history_sum(row, std::span<const GridFunction>(s.p.data(), n), n - 1, hp);

  GridFunction lap_prev = laplacian_5pt(s.ubar[n - 1]);
  if (n == 1)
    k::axpby(1.0, lap_prev.values(), 1.0 - sigma, s.lap0_ghost.values(), lap_prev.values());
  GridFunction force(s.grid);
  if (spec.forcing)
    force = GridFunction::sample(s.grid, [&](double x, double y) { return spec.forcing(x, y, tstar); });

  StepOperator op;
  op.mass = g * g / sigma;
  op.nu_sigma = spec.nu * sigma;
  op.inv_h2 = 1.0 / (s.grid.h * s.grid.h);
  op.grid = s.grid;
  op.diag.resize(sz);

  // p_base = (H_U - (1-sigma) P^{n-1}) / sigma: the intercept of the affine
  // elimination written against the previous level, so the large g^2 terms
  // cancel analytically instead of in floating point.
  std::vector<double> p_base(sz), rhs(sz), inv_diag(sz);
  const double* ub_prev = s.ubar[n - 1].data();
  const double* p_prev = s.p[n - 1].data();
  const double* phi = s.phi.data();
  const double* lphi = s.lap_phi.data();
  const double* lup = lap_prev.data();
  const double* frc = force.data();
  const double diag_floor = op.mass + 4.0 * op.nu_sigma * op.inv_h2;
  const std::ptrdiff_t szp = static_cast<std::ptrdiff_t>(sz);
#pragma omp parallel for schedule(static) if (k::par(sz))
  for (std::ptrdiff_t ip = 0; ip < szp; ++ip) {
    const std::size_t i = static_cast<std::size_t>(ip);
    const double u_prev = ub_prev[i] + tprev * phi[i];
    const double cos_term = sigma * kap2 * std::cos(u_prev);
    op.diag[i] = cos_term;
    inv_diag[i] = 1.0 / (diag_floor + cos_term);
    p_base[i] = (hu[i] - (1.0 - sigma) * p_prev[i]) / sigma;
    rhs[i] = frc[i] + spec.nu * tstar * lphi[i] - kap2 * std::sin(u_prev) -
             cos_term * tau_n * phi[i] - g * (p_base[i] - p_prev[i]) - hp[i] +
             spec.nu * lup[i];
  }

  std::vector<double> w(sz, 0.0);
  CgOptions cg;
  cg.rel_tol = opt.cg_rel_tol;
  cg.abs_tol = opt.cg_abs_tol;
  cg.max_iterations = opt.cg_max_iter_factor * sz;
  try {
    cg_solve([&](const double* in, double* out) { op.apply(in, out); }, rhs, inv_diag,
             w, cg);
  } catch (const NoConvergence& e) {
    throw SolveError(std::string("linear solve failed: ") + e.what(), n);
  }

  GridFunction ub_next(s.grid), p_next(s.grid);
  double* un = ub_next.data();
  double* pn = p_next.data();
#pragma omp parallel for schedule(static) if (k::par(sz))
  for (std::ptrdiff_t ip = 0; ip < szp; ++ip) {
    const std::size_t i = static_cast<std::size_t>(ip);
    un[i] = ub_prev[i] + w[i];
    pn[i] = (g / sigma) * w[i] + p_base[i];
  }
  s.ubar.push_back(std::move(ub_next));
  s.p.push_back(std::move(p_next));

  if (opt.check_residuals) {
    const StepResiduals res = step_residuals(s, spec, n, row);
    if (!(res.pde <= opt.residual_tol && res.reduction <= opt.residual_tol)) {
      std::ostringstream msg;
      msg << "per-step residual contract violated: pde = " << res.pde
          << ", reduction = " << res.reduction << " (tol " << opt.residual_tol << ")";
      throw SolveError(msg.str(), n);
    }
  }
}

}  // namespace

SolverState run(const ProblemSpec& spec, const TemporalMesh& mesh,
                const SpatialGrid& grid, const StepperOptions& opt) {
  if (std::abs(mesh.sigma() - spec.order.sigma) > 1e-12)
    throw std::invalid_argument("run: mesh offset sigma does not match the problem order");
  if (std::abs(mesh.final_time() - spec.final_time) > 1e-12 * (1.0 + spec.final_time))
    throw std::invalid_argument("run: mesh final time does not match the problem");
  if (std::abs(grid.length - spec.length) > 1e-12 * (1.0 + spec.length))
    throw std::invalid_argument("run: grid edge length does not match the problem");
  if (!(spec.nu > 0.0))
    throw std::invalid_argument("run: diffusion coefficient must be positive");
  if (mesh.grading() >= 4.0 / spec.order.beta)
    log_stream(opt) << "warning: grading exponent r = " << mesh.grading()
                    << " is at or beyond 4/beta = " << 4.0 / spec.order.beta
                    << "; the stability hypotheses do not cover this range\n";

  SolverState s{mesh, grid, {}, {}, {}, {}, {}};
  s.phi = sample_or_zero(grid, spec.phi);
  if (spec.laplacian_phi) {
    s.lap_phi = GridFunction::sample(grid, spec.laplacian_phi);
  } else {
    s.lap_phi = laplacian_5pt(s.phi);
    if (spec.phi)
      log_stream(opt) << "warning: no analytic Laplacian of the initial velocity; "
                         "falling back to the five-point Laplacian of its samples\n";
  }
  s.lap0_ghost = GridFunction(grid);
  if (spec.initial_boundary_from_psi && spec.psi) {
    const int m = grid.interior();
    const double inv_h2 = 1.0 / (grid.h * grid.h);
    const double L = grid.length;
    for (int j = 1; j <= m; ++j) {
      s.lap0_ghost(1, j) += spec.psi(0.0, grid.x(j)) * inv_h2;
      s.lap0_ghost(m, j) += spec.psi(L, grid.x(j)) * inv_h2;
      s.lap0_ghost(j, 1) += spec.psi(grid.x(j), 0.0) * inv_h2;
      s.lap0_ghost(j, m) += spec.psi(grid.x(j), L) * inv_h2;
    }
  }
  s.ubar.reserve(mesh.steps() + 1);
  s.p.reserve(mesh.steps() + 1);
  s.ubar.push_back(sample_or_zero(grid, spec.psi));
  s.p.push_back(GridFunction(grid));

  for (std::size_t n = 1; n <= mesh.steps(); ++n)
    advance_level(s, spec, n, opt);
  return s;
}

}  // namespace fsg

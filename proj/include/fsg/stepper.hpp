#pragma once

#include "fsg/coeffs.hpp"
#include "fsg/grid.hpp"
#include "fsg/mesh.hpp"

#include <functional>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fsg {

using Field2 = std::function<double(double, double)>;
using Field3 = std::function<double(double, double, double)>;

// Problem data for
//   D_t^alpha u - nu Lap(u) + kappa^2 sin(u) = forcing   on (0,L)^2 x (0,T],
//   u(.,0) = psi,  u_t(.,0) = phi,  u = 0 on the boundary.
// Empty samplers default to zero; an empty laplacian_phi falls back to the
// discrete five-point Laplacian of the phi samples (with a logged warning).
struct ProblemSpec {
  FractionalOrder order{};
  double nu = 1.0;
  double kappa = 1.0;
  double length = 1.0;
  double final_time = 0.5;
  Field2 psi;
  Field2 phi;
  Field2 laplacian_phi;
  Field3 forcing;
  // When psi does not vanish on the boundary, keep its boundary samples as
  // ghost values in the level-0 Laplacian (all later levels stay homogeneous).
  bool initial_boundary_from_psi = false;
};

// The per-step operator fails the positivity bound g_nn^2/sigma > sigma*kappa^2
// (time steps too coarse relative to the nonlinearity amplitude).
struct IndefiniteOperator : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Any failure inside the time loop, tagged with the failing level.
struct SolveError : std::runtime_error {
  SolveError(const std::string& what, std::size_t failing_level)
      : std::runtime_error(what), level(failing_level) {}
  std::size_t level;
};

struct StepperOptions {
  double cg_rel_tol = 1e-14;
  double cg_abs_tol = 1e-11;
  std::size_t cg_max_iter_factor = 10;  // cap = factor * (M-1)^2
  CoeffBackend backend = CoeffBackend::closed_form;
  bool check_residuals = true;     // recompute both discrete equations per step
  double residual_tol = 1e-9;      // max-norm gate for the recomputed residuals
  std::ostream* log = nullptr;     // warnings; nullptr -> std::cerr
};

// Full trajectory of the coupled fields: ubar[n] is the shifted displacement
// at level n and p[n] the auxiliary half-order derivative.
struct SolverState {
  TemporalMesh mesh;
  SpatialGrid grid;
  GridFunction phi;      // initial-velocity samples
  GridFunction lap_phi;  // Laplacian-of-velocity samples (analytic or discrete)
  GridFunction lap0_ghost;  // boundary-ghost correction to the level-0 Laplacian
  std::vector<GridFunction> ubar;  // levels 0..n
  std::vector<GridFunction> p;

  std::size_t level() const { return ubar.size() - 1; }
  GridFunction displacement(std::size_t n) const;  // U^n = ubar^n + t_n * phi
};

// Exact elimination of the auxiliary field from the order-reduction relation:
// P^n = slope * Ubar^n + intercept with slope = g_nn / sigma.
struct AffineP {
  double slope;
  GridFunction intercept;
};
AffineP eliminate_p(std::size_t n, const CoeffRow& row, const SolverState& s);

// Symmetric per-step operator A(W) = (mass + diag)⊙W - nu*sigma*Lap(W) with
// mass = g_nn^2/sigma and diag = sigma*kappa^2*cos(U^{n-1}).
struct StepOperator {
  double mass = 0.0;
  double nu_sigma = 0.0;
  double inv_h2 = 0.0;
  std::vector<double> diag;
  SpatialGrid grid;

  void apply(const double* in, double* out) const;
  GridFunction operator()(const GridFunction& w) const;
};

// Both discrete equations recomputed independently from the raw histories.
struct StepResiduals {
  double pde = 0.0;        // balance equation for the auxiliary field
  double reduction = 0.0;  // order-reduction relation
};
StepResiduals step_residuals(const SolverState& s, const ProblemSpec& spec,
                             std::size_t n, const CoeffRow& row);

// Advance the linearized scheme through all N levels.
SolverState run(const ProblemSpec& spec, const TemporalMesh& mesh,
                const SpatialGrid& grid, const StepperOptions& opt = {});

// Discrete Caputo operator applied pointwise over a field history.
GridFunction apply_caputo_field(const CoeffRow& row, std::span<const GridFunction> history);

}  // namespace fsg

#pragma once

#include "fsg/stepper.hpp"

namespace fsg {

// Benchmark problem with the known solution u = (t + t^alpha) sin(pi x) sin(pi y)
// on (0,1)^2, nu = 0.1, kappa = 1, T = 0.5.  The initial data are psi = 0 and
// phi = sin(pi x) sin(pi y); the forcing is assembled so the solution is exact.
double example1_exact(double x, double y, double t, double alpha);
double example1_exact_laplacian(double x, double y, double t, double alpha);
double example1_forcing(double x, double y, double t, double alpha, double nu);
ProblemSpec example1_spec(double alpha);

// Benchmark problem without a known solution: psi = exp(cos x * cos y),
// phi = 0, no forcing, nu = kappa = 1 on (0,pi)^2 with T = 0.5.  psi does not
// vanish on the boundary; the scheme samples psi at interior nodes and keeps
// the boundary at zero, which is the construction the error tables use.
ProblemSpec example2_spec(double alpha);

// Scalar test function t^mu with derivative samplers, mu in (0,1) or (1,2).
struct PowerFn {
  double mu;
  double value(double t) const;
  double d1(double t) const;
  double d2(double t) const;
};
PowerFn scalar_test_fn(double mu);

}  // namespace fsg

#pragma once

#include <functional>

namespace fsg::quad {

struct Estimate {
  double value;
  double error;
};

// 15-point Gauss-Kronrod rule on [a,b] with the embedded 7-point Gauss
// estimate driving the error bound.
Estimate gk15(const std::function<double(double)>& f, double a, double b);

// Globally adaptive bisection built on gk15.  The tolerance is resolved once
// from the first whole-interval estimate and then split between halves.
double adaptive(const std::function<double(double)>& f, double a, double b,
                double rel_tol = 1e-13, double abs_tol = 0.0, int max_depth = 48);

// Integral over (a,b) of an integrand with weak endpoint singularities:
// behaves like d^{pa} at distance d from a and like d^{pb} at distance d
// from b, with pa, pb > -1 (use 0 for a regular endpoint).  The integrand is
// supplied per endpoint as a function of the distance, so values next to a
// singular endpoint never suffer cancellation:
//   from_left(d)  = integrand at s = a + d,
//   from_right(d) = integrand at s = b - d.
// Power substitutions cluster geometric Gauss-Legendre panels at both ends;
// exponents down to about -0.95 resolve to near machine precision.
double graded_endpoints(const std::function<double(double)>& from_left,
                        const std::function<double(double)>& from_right,
                        double a, double b, double pa, double pb);

// High-accuracy Caputo derivatives of scalar functions on (0,t), used as
// oracles.  The derivative sampler must behave like s^{sing} as s -> 0
// (sing > -1).
double caputo_from_d1(double beta_prime, const std::function<double(double)>& d1,
                      double t, double sing);
double caputo_from_d2(double alpha, const std::function<double(double)>& d2,
                      double t, double sing);

}  // namespace fsg::quad

#pragma once

#include <functional>

namespace ctorque::quadrature {

struct Estimate {
  double value = 0.0;
  double abs_error = 0.0;
  int evaluations = 0;
  int intervals = 0;
  bool converged = false;
};

/// 15-point Kronrod rule with embedded 7-point Gauss rule on [a, b].
/// Only interior nodes are evaluated. The error estimate follows QUADPACK's
/// qk15 heuristic.
Estimate gauss_kronrod_15(const std::function<double(double)>& f, double a, double b);

/// Globally adaptive bisection (QAG strategy): the interval with the largest
/// error estimate is split until the summed error is below
/// max(abs_tol, rel_tol * |I|) or `max_intervals` is reached. Never throws on
/// non-convergence; check `converged`.
Estimate integrate(const std::function<double(double)>& f, double a, double b, double rel_tol,
                   double abs_tol, int max_intervals);

}  // namespace ctorque::quadrature

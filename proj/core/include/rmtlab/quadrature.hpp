#pragma once

#include <functional>

namespace rmtlab {

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
};

/// Globally adaptive 15-point Gauss-Kronrod on a finite interval [a, b]: bisects the
/// interval with the largest error estimate until the total estimate is below
/// rel_tol * |I| or the round-off floor of the integral of |f|.
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double rel_tol = 1e-13);

}  // namespace rmtlab

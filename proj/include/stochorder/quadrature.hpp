#pragma once

#include <functional>

namespace stochorder {

struct QuadratureResult {
  double value = 0.0;
  double abs_error = 0.0;  // accumulated error estimate
  bool converged = false;
  long evaluations = 0;
};

/// Adaptive 15-point Gauss-Legendre on [a, b] for a bounded integrand.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, double rel_tol = 1e-10,
                                    int max_depth = 48);

/// Integral of u^c * g(u) over [0, 1] with c > -1.
/// For c < 0 the singular endpoint is split off and absorbed by the
/// substitution v = u^(1+c) before adaptive Gauss-Legendre is applied.
QuadratureResult integrate_power_weighted_01(double c,
                                             const std::function<double(double)>& g,
                                             double rel_tol = 1e-10);

}  // namespace stochorder

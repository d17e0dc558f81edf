#pragma once

// Gamma-family special functions used by the distribution layer.
// All functions are pure and thread-safe.

namespace stochorder {

/// Natural log of the gamma function for x > 0 (Lanczos approximation,
/// relative error below 1e-13 over the positive axis).
double lgamma_pos(double x);

/// Gamma function for x > 0.
double gamma_pos(double x);

/// Regularized lower incomplete gamma P(a, z) = gamma(a, z) / Gamma(a).
/// Series expansion for z < a + 1, continued fraction otherwise.
double reg_lower_gamma(double a, double z);

/// Regularized upper incomplete gamma Q(a, z) = 1 - P(a, z).
double reg_upper_gamma(double a, double z);

/// log P(a, z), stable when P underflows (z -> 0).
double log_reg_lower_gamma(double a, double z);

/// log Q(a, z), stable when Q underflows (z -> inf).
double log_reg_upper_gamma(double a, double z);

/// Inverse of P(a, .): returns z with P(a, z) = p for p in (0, 1).
/// Bracketed Newton iteration with bisection fallback, residual below 1e-13.
double inv_reg_lower_gamma(double a, double p);

/// log(1 - e^x) for x < 0.
double log1mexp(double x);

}  // namespace stochorder

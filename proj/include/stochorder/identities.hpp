#pragma once

#include <optional>
#include <span>

#include "stochorder/dists.hpp"
#include "stochorder/parallel.hpp"

namespace stochorder {

/// Location of the first failed pointwise condition in an assumption scan.
struct AssumptionViolation {
  char which;        // 'a', 'b' or 'c'
  double x;          // grid point of the violation
  double magnitude;  // relative excess over the allowed slack direction
};

/// Result of auditing a baseline family against the three ordering conditions:
///   (a) x * rh(x) nonincreasing
///   (b) s(x) = x * (rh(x) - h'(x)/h(x)) nondecreasing
///   (c) survival(x) <= -w(x) h(x)^2 / h'(x) pointwise (h must be decreasing)
struct AssumptionReport {
  bool assumption_a = false;
  bool assumption_b = false;
  bool assumption_c = false;
  std::optional<AssumptionViolation> first_violation;

  bool all() const { return assumption_a && assumption_b && assumption_c; }
};

/// Default audit grid: 4000 log-spaced points on [1e-4, 50].
EvalGrid audit_grid();

/// Shape regimes for which the three ordering conditions are established:
/// pgw with q <= 1, gg with alpha >= beta.
bool in_validated_regime(const BaselineFamily& fam);

bool check_assumption_a(const BaselineFamily& fam, const EvalGrid& grid,
                        AssumptionViolation* violation = nullptr);
bool check_assumption_b(const BaselineFamily& fam, const EvalGrid& grid,
                        AssumptionViolation* violation = nullptr);
bool check_assumption_c(const BaselineFamily& fam, const EvalGrid& grid,
                        AssumptionViolation* violation = nullptr);
AssumptionReport check_assumptions(const BaselineFamily& fam, const EvalGrid& grid);
AssumptionReport check_assumptions(const BaselineFamily& fam);

/// Generic monotonicity scan used by the audits; exposed for harness
/// self-tests against synthetic value sequences.
bool scan_monotone(std::span<const double> xs, std::span<const double> vs,
                   bool nonincreasing, char label,
                   AssumptionViolation* violation);

/// Relative residual of  y rh(y) = h(y) / integral_0^1 w(u) h(yu) du,
/// with the integral evaluated by adaptive quadrature.
double xrh_integral_identity_residual(const BaselineFamily& fam, double y);

/// Relative residual of
///   (y rh(y))' = (y rh(y)) h'(y)/h(y) - y rh(y)^2 + (1 + w'(1)) rh(y)
/// against a central finite difference of y rh(y).
double xrh_derivative_identity_residual(const BaselineFamily& fam, double y);

/// Margin of the key inequality: with y_min = min(y),
///   sum a_i y_i rh(y_i)
///     - y_min (rh(y_min) - h'(y_min)/h(y_min)) (1 - prod F(y_i)^(a_i)) >= 0.
/// Requires every shape exponent >= 1 and refuses families outside the
/// validated regime (the inequality rests on the audited conditions).
double weighted_sum_inequality_margin(const BaselineFamily& fam, std::span<const double> y,
                            std::span<const double> shape_exps);

/// psi(x) = q(q-1) + e^(x-1) ((q-1)^2 x + q x^2 - x^(1+q) + 2q(1-q)),
/// nonnegative for x >= 1 and q in (0, 1].
double pgw_monotonicity_auxiliary(double x, double q);

/// Schur-type sign condition for the two-block hazard function phi(y, y*):
///   (ln y - ln y*) (y d(phi)/dy - y* d(phi)/dy*) <= 0,
/// partials by central finite differences; p of n blocks at y, rest at y*.
bool check_two_block_schur_condition(const BaselineFamily& fam, double y, double y_star,
                         int p, int n);

struct GeometricMeanExtremum {
  double psi_at_x;
  double psi_at_gm;
  double margin;  // psi_at_gm - psi_at_x, nonnegative in the validated regime
};

/// The weighted-geometric-mean point maximizes psi over vectors with the same
/// weighted geometric mean: psi(x) <= psi(gm, ..., gm) with weights shape_exps.
GeometricMeanExtremum gm_extremum_margin(const BaselineFamily& fam,
                                      std::span<const double> shape_exps,
                                      std::span<const double> x);

}  // namespace stochorder

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "stochorder/dists.hpp"
#include "stochorder/parallel.hpp"

namespace stochorder {

/// Hazard of a homogeneous reference system whose CDF is F(lambda x)^N,
/// N = total exponent mass. The closed-form hazard upper bounds below are
/// instances of this at the (weighted) geometric-mean scale.
double homogeneous_power_hazard(const BaselineFamily& fam, double total_exp,
                                double lambda, double x);

/// Conditional survival of the same reference system:
///   (1 - F(lambda (x+t))^N) / (1 - F(lambda x)^N).
double homogeneous_power_conditional_survival(const BaselineFamily& fam,
                                              double total_exp, double lambda,
                                              double x, double t);

/// Hazard upper bound for an n-component PGW(p, q) system, evaluated at the
/// geometric mean of the component scales. Valid regime: q <= 1. Returns +inf
/// once the reference survival drops below e^-700.
double pgw_hazard_bound(double n, double lambda_gm, double p, double q, double x);

/// Conditional-survival lower bound for the same system.
double pgw_conditional_survival_bound(double n, double lambda_gm, double p,
                                      double q, double x, double t);

/// Hazard upper bound for exponentiated GG components (mean exponent
/// theta_bar, exponent-weighted geometric-mean scale lambda_wg). Valid
/// regime: alpha >= beta and all exponents >= 1.
double egg_hazard_bound(double n, double theta_bar, double lambda_wg,
                        double alpha, double beta, double x);

double egg_conditional_survival_bound(double n, double theta_bar,
                                      double lambda_wg, double alpha,
                                      double beta, double x, double t);

/// Bound curve against the exact system hazard; slack = bound - actual.
/// Serializes as `x,bound,actual,slack` CSV rows with 17 significant digits.
struct BoundCurve {
  EvalGrid grid;
  std::vector<double> bound_values;
  std::vector<double> actual_values;
  std::vector<double> slack;
  bool supported_regime;  // false when the dominance hypotheses do not hold

  void write_csv(std::ostream& os) const;
};

/// Hazard bound for the given system at the geometric-mean reference scale
/// (plain gm for unit exponents, exponent-weighted otherwise). Out-of-regime
/// systems are computed anyway with supported_regime = false.
BoundCurve hazard_bound_curve(const ParallelSystem& s, const EvalGrid& grid);

}  // namespace stochorder

#include "stochorder/bounds.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

#include "stochorder/preorders.hpp"
#include "stochorder/special_functions.hpp"

namespace stochorder {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLogRefFloor = -700.0;  // reference survival cutoff

void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw std::domain_error(std::string(what) + " must be positive and finite");
}

// log of 1 - F(lambda x)^N
double log_ref_survival(const BaselineFamily& fam, double total_exp,
                        double lambda, double x) {
  const ComponentSpec ref(fam, lambda, total_exp);
  return log_survival(ref, x);
}

}  // namespace

double homogeneous_power_hazard(const BaselineFamily& fam, double total_exp,
                                double lambda, double x) {
  require_positive(total_exp, "exponent mass");
  require_positive(lambda, "lambda");
  require_positive(x, "x");
  const double ls = log_ref_survival(fam, total_exp, lambda, x);
  if (ls < kLogRefFloor) return kInf;
  const double y = lambda * x;
  const double lnum = std::log(total_exp * lambda) +
                      (total_exp - 1.0) * baseline_log_cdf(fam, y) +
                      baseline_log_pdf(fam, y);
  return std::exp(lnum - ls);
}

double homogeneous_power_conditional_survival(const BaselineFamily& fam,
                                              double total_exp, double lambda,
                                              double x, double t) {
  require_positive(total_exp, "exponent mass");
  require_positive(lambda, "lambda");
  require_positive(x, "x");
  if (!(t >= 0.0) || !std::isfinite(t))
    throw std::domain_error("t must be finite and nonnegative");
  const double ls_x = log_ref_survival(fam, total_exp, lambda, x);
  if (ls_x < kLogRefFloor)
    throw std::domain_error("conditional survival bound: survival underflow at x");
  const double ls_xt = log_ref_survival(fam, total_exp, lambda, x + t);
  return std::min(1.0, std::exp(ls_xt - ls_x));
}

double pgw_hazard_bound(double n, double lambda_gm, double p, double q, double x) {
  return homogeneous_power_hazard(BaselineFamily::pgw(p, q), n, lambda_gm, x);
}

double pgw_conditional_survival_bound(double n, double lambda_gm, double p,
                                      double q, double x, double t) {
  return homogeneous_power_conditional_survival(BaselineFamily::pgw(p, q), n,
                                                lambda_gm, x, t);
}

double egg_hazard_bound(double n, double theta_bar, double lambda_wg,
                        double alpha, double beta, double x) {
  return homogeneous_power_hazard(BaselineFamily::gg(alpha, beta),
                                  n * theta_bar, lambda_wg, x);
}

double egg_conditional_survival_bound(double n, double theta_bar,
                                      double lambda_wg, double alpha,
                                      double beta, double x, double t) {
  return homogeneous_power_conditional_survival(BaselineFamily::gg(alpha, beta),
                                                n * theta_bar, lambda_wg, x, t);
}

void BoundCurve::write_csv(std::ostream& os) const {
  os << "x,bound,actual,slack\n";
  char buf[128];
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", grid[i],
                  bound_values[i], actual_values[i], slack[i]);
    os << buf;
  }
}

BoundCurve hazard_bound_curve(const ParallelSystem& s, const EvalGrid& grid) {
  const BaselineFamily& fam = s.family();
  std::vector<double> lambdas, exps;
  double total_exp = 0.0;
  for (const auto& c : s.components()) {
    lambdas.push_back(c.lambda);
    exps.push_back(c.shape_exp);
    total_exp += c.shape_exp;
  }
  const double lambda_ref = weighted_geometric_mean(ParamVector(lambdas, exps));

  bool supported;
  if (fam.is_pgw()) {
    supported = fam.shape2() <= 1.0;
  } else {
    supported = fam.shape1() >= fam.shape2();
    for (double e : exps) supported = supported && e >= 1.0;
  }

  BoundCurve out{grid, {}, {}, {}, supported};
  out.bound_values.reserve(grid.size());
  out.actual_values.reserve(grid.size());
  out.slack.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid[i];
    const double bound = homogeneous_power_hazard(fam, total_exp, lambda_ref, x);
    const double actual = system_hazard(s, x);
    out.bound_values.push_back(bound);
    out.actual_values.push_back(actual);
    out.slack.push_back(bound - actual);
  }
  return out;
}

}  // namespace stochorder

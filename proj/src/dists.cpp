#include "stochorder/dists.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "stochorder/special_functions.hpp"

namespace stochorder {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// component survival below this is reported as underflowed by hazard()
constexpr double kLogSurvivalFloor = -690.77552789821371;  // log(1e-300)

void require_positive_shape(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw std::domain_error(std::string("parameter ") + name +
                            " must be positive and finite");
}

void require_time(double x) {
  if (!(x >= 0.0) || !std::isfinite(x))
    throw std::domain_error("time argument must be finite and nonnegative");
}

void require_positive_time(double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw std::domain_error("time argument must be finite and positive");
}

// pgw internals at scale 1: with T(x) = (1 + x^p)^(1/q), the log survival is
// 1 - T = -expm1(log1p(x^p)/q), exact even when T is within an ulp of 1.
// x^p goes through exp(p log x).
double pgw_log_survival_at(double p, double q, double x) {
  if (x == 0.0) return 0.0;
  const double xp = std::exp(p * std::log(x));
  return -std::expm1(std::log1p(xp) / q);
}

double gg_order(const BaselineFamily& fam) { return fam.shape2() / fam.shape1(); }

double h_at_zero(const BaselineFamily& fam) {
  if (fam.is_pgw()) return fam.shape1() / fam.shape2();
  return fam.shape1() / gamma_pos(fam.shape2() / fam.shape1());
}

}  // namespace

BaselineFamily::BaselineFamily(FamilyKind kind, double s1, double s2)
    : kind_(kind), shape1_(s1), shape2_(s2) {
  require_positive_shape(s1, kind == FamilyKind::pgw ? "p" : "alpha");
  require_positive_shape(s2, kind == FamilyKind::pgw ? "q" : "beta");
}

BaselineFamily BaselineFamily::pgw(double p, double q) {
  return BaselineFamily(FamilyKind::pgw, p, q);
}

BaselineFamily BaselineFamily::gg(double alpha, double beta) {
  return BaselineFamily(FamilyKind::gg, alpha, beta);
}

double baseline_log_survival(const BaselineFamily& fam, double x) {
  require_time(x);
  if (fam.is_pgw()) return pgw_log_survival_at(fam.shape1(), fam.shape2(), x);
  if (x == 0.0) return 0.0;
  const double z = std::exp(fam.shape1() * std::log(x));
  return log_reg_upper_gamma(gg_order(fam), z);
}

double baseline_survival(const BaselineFamily& fam, double x) {
  require_time(x);
  if (fam.is_pgw()) return std::exp(baseline_log_survival(fam, x));
  if (x == 0.0) return 1.0;
  const double z = std::exp(fam.shape1() * std::log(x));
  return reg_upper_gamma(gg_order(fam), z);
}

double baseline_log_cdf(const BaselineFamily& fam, double x) {
  require_time(x);
  if (x == 0.0) return -kInf;
  if (fam.is_pgw()) {
    const double ls = pgw_log_survival_at(fam.shape1(), fam.shape2(), x);
    if (ls == 0.0) return -kInf;  // x so small that T rounds to 1
    return log1mexp(ls);
  }
  const double z = std::exp(fam.shape1() * std::log(x));
  return log_reg_lower_gamma(gg_order(fam), z);
}

double baseline_cdf(const BaselineFamily& fam, double x) {
  require_time(x);
  if (x == 0.0) return 0.0;
  if (fam.is_pgw())
    return -std::expm1(pgw_log_survival_at(fam.shape1(), fam.shape2(), x));
  const double z = std::exp(fam.shape1() * std::log(x));
  return reg_lower_gamma(gg_order(fam), z);
}

double baseline_log_pdf(const BaselineFamily& fam, double x) {
  require_positive_time(x);
  if (fam.is_pgw()) {
    const double p = fam.shape1(), q = fam.shape2();
    const double xp = std::exp(p * std::log(x));
    return std::log(p / q) + (p - 1.0) * std::log(x) +
           (1.0 / q - 1.0) * std::log1p(xp) + pgw_log_survival_at(p, q, x);
  }
  const double alpha = fam.shape1(), beta = fam.shape2();
  const double z = std::exp(alpha * std::log(x));
  return std::log(alpha) - lgamma_pos(beta / alpha) + (beta - 1.0) * std::log(x) - z;
}

double baseline_pdf(const BaselineFamily& fam, double x) {
  return std::exp(baseline_log_pdf(fam, x));
}

double baseline_reversed_hazard(const BaselineFamily& fam, double x) {
  require_positive_time(x);
  return std::exp(baseline_log_pdf(fam, x) - baseline_log_cdf(fam, x));
}

double baseline_hazard(const BaselineFamily& fam, double x) {
  require_positive_time(x);
  const double ls = baseline_log_survival(fam, x);
  if (ls < kLogSurvivalFloor) return kInf;
  return std::exp(baseline_log_pdf(fam, x) - ls);
}

double w_exponent(const BaselineFamily& fam) {
  return (fam.is_pgw() ? fam.shape1() : fam.shape2()) - 1.0;
}

double w_value(const BaselineFamily& fam, double x) {
  require_positive_time(x);
  return std::exp(w_exponent(fam) * std::log(x));
}

double h_value(const BaselineFamily& fam, double x) {
  require_positive_time(x);
  if (fam.is_pgw()) {
    const double p = fam.shape1(), q = fam.shape2();
    const double xp = std::exp(p * std::log(x));
    return (p / q) * std::exp((1.0 / q - 1.0) * std::log1p(xp) +
                              pgw_log_survival_at(p, q, x));
  }
  const double alpha = fam.shape1(), beta = fam.shape2();
  const double z = std::exp(alpha * std::log(x));
  return std::exp(std::log(alpha) - lgamma_pos(beta / alpha) - z);
}

double h_log_derivative(const BaselineFamily& fam, double x) {
  require_positive_time(x);
  if (fam.is_pgw()) {
    const double p = fam.shape1(), q = fam.shape2();
    const double xp = std::exp(p * std::log(x));
    const double xpm1 = std::exp((p - 1.0) * std::log(x));
    return p * xpm1 * ((1.0 / q - 1.0) / (1.0 + xp) -
                       (1.0 / q) * std::exp((1.0 / q - 1.0) * std::log1p(xp)));
  }
  const double alpha = fam.shape1();
  return -alpha * std::exp((alpha - 1.0) * std::log(x));
}

ComponentSpec::ComponentSpec(BaselineFamily fam, double lam, double a)
    : family(fam), lambda(lam), shape_exp(a) {
  require_positive_shape(lam, "lambda");
  require_positive_shape(a, "shape_exp");
}

double log_cdf(const ComponentSpec& c, double x) {
  require_time(x);
  return c.shape_exp * baseline_log_cdf(c.family, c.lambda * x);
}

double cdf(const ComponentSpec& c, double x) { return std::exp(log_cdf(c, x)); }

double survival(const ComponentSpec& c, double x) {
  const double lf = log_cdf(c, x);
  return lf == -kInf ? 1.0 : -std::expm1(lf);
}

double log_survival(const ComponentSpec& c, double x) {
  require_time(x);
  const double ls_base = baseline_log_survival(c.family, c.lambda * x);
  if (ls_base < -37.0) {
    // 1 - (1 - s)^a = a s (1 - (a-1) s / 2 + O(s^2))
    const double s = std::exp(ls_base);
    return std::log(c.shape_exp) + ls_base + std::log1p(-0.5 * (c.shape_exp - 1.0) * s);
  }
  const double lf = log_cdf(c, x);
  if (lf == -kInf) return 0.0;
  return log1mexp(lf);
}

double pdf(const ComponentSpec& c, double x) {
  require_time(x);
  const double a = c.shape_exp;
  if (x == 0.0) {
    if (w_exponent(c.family) < 0.0 || a < 1.0)
      throw std::domain_error("pdf diverges at x = 0 for this parameter set");
    if (a > 1.0 || w_exponent(c.family) > 0.0) return 0.0;
    return c.lambda * h_at_zero(c.family);
  }
  const double y = c.lambda * x;
  const double lf = baseline_log_pdf(c.family, y);
  if (a == 1.0) return c.lambda * std::exp(lf);
  return a * c.lambda * std::exp((a - 1.0) * baseline_log_cdf(c.family, y) + lf);
}

double reversed_hazard(const ComponentSpec& c, double x) {
  require_positive_time(x);
  return c.shape_exp * c.lambda * baseline_reversed_hazard(c.family, c.lambda * x);
}

double hazard(const ComponentSpec& c, double x) {
  require_positive_time(x);
  const double ls = log_survival(c, x);
  if (ls < kLogSurvivalFloor) return kInf;
  const double y = c.lambda * x;
  const double a = c.shape_exp;
  const double lnum = std::log(a * c.lambda) +
                      (a - 1.0) * baseline_log_cdf(c.family, y) +
                      baseline_log_pdf(c.family, y);
  return std::exp(lnum - ls);
}

ParallelSystem::ParallelSystem(std::vector<ComponentSpec> components)
    : components_(std::move(components)) {
  if (components_.empty())
    throw std::invalid_argument("parallel system needs at least one component");
  const BaselineFamily& ref = components_.front().family;
  for (const auto& c : components_)
    if (!(c.family == ref))
      throw std::invalid_argument(
          "all components of a system must share one baseline family");
}

}  // namespace stochorder

#pragma once

#include <cstddef>
#include <vector>

namespace stochorder {

enum class FamilyKind { pgw, gg };

/// Baseline lifetime family at scale 1. Two kinds:
///   pgw(p, q): survival exp(1 - (1 + x^p)^(1/q))
///   gg(alpha, beta): density (alpha / Gamma(beta/alpha)) x^(beta-1) exp(-x^alpha)
/// Both densities factor as f = w * h with w(x) = x^{w'(1)} multiplicative
/// and h carrying the exponential part.
class BaselineFamily {
 public:
  static BaselineFamily pgw(double p, double q);
  static BaselineFamily gg(double alpha, double beta);

  FamilyKind kind() const { return kind_; }
  bool is_pgw() const { return kind_ == FamilyKind::pgw; }

  // shape1 is p (pgw) or alpha (gg); shape2 is q (pgw) or beta (gg)
  double shape1() const { return shape1_; }
  double shape2() const { return shape2_; }

  bool operator==(const BaselineFamily&) const = default;

 private:
  BaselineFamily(FamilyKind kind, double s1, double s2);
  FamilyKind kind_;
  double shape1_;
  double shape2_;
};

// --- baseline (scale 1) pointwise functions; x >= 0 unless noted ---

double baseline_cdf(const BaselineFamily& fam, double x);
double baseline_log_cdf(const BaselineFamily& fam, double x);
double baseline_survival(const BaselineFamily& fam, double x);
double baseline_log_survival(const BaselineFamily& fam, double x);
double baseline_pdf(const BaselineFamily& fam, double x);        // x > 0
double baseline_log_pdf(const BaselineFamily& fam, double x);    // x > 0
double baseline_reversed_hazard(const BaselineFamily& fam, double x);  // f/F, x > 0
double baseline_hazard(const BaselineFamily& fam, double x);           // f/S, x > 0

/// Exponent of the multiplicative factor: w(x) = x^{w_exponent}.
/// pgw -> p - 1, gg -> beta - 1.
double w_exponent(const BaselineFamily& fam);
double w_value(const BaselineFamily& fam, double x);  // x > 0

double h_value(const BaselineFamily& fam, double x);           // x > 0
double h_log_derivative(const BaselineFamily& fam, double x);  // h'/h, x > 0

/// One component: baseline family, scale lambda, and the exponent applied to
/// the CDF, so F_i(x) = (F(lambda x))^shape_exp.
struct ComponentSpec {
  ComponentSpec(BaselineFamily fam, double lambda, double shape_exp = 1.0);

  BaselineFamily family;
  double lambda;
  double shape_exp;
};

double cdf(const ComponentSpec& c, double x);
double log_cdf(const ComponentSpec& c, double x);
double survival(const ComponentSpec& c, double x);
double log_survival(const ComponentSpec& c, double x);
double pdf(const ComponentSpec& c, double x);
double reversed_hazard(const ComponentSpec& c, double x);  // shape_exp * lambda * rh(lambda x)
double hazard(const ComponentSpec& c, double x);  // +inf once survival underflows 1e-300

/// Independent components, system lifetime = max. All components must share
/// the same family (kind and shape parameters); scale and shape_exp may vary.
class ParallelSystem {
 public:
  explicit ParallelSystem(std::vector<ComponentSpec> components);

  const std::vector<ComponentSpec>& components() const { return components_; }
  std::size_t size() const { return components_.size(); }
  const BaselineFamily& family() const { return components_.front().family; }

 private:
  std::vector<ComponentSpec> components_;
};

}  // namespace stochorder

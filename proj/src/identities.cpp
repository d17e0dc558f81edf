#include "stochorder/identities.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "stochorder/quadrature.hpp"
#include "stochorder/special_functions.hpp"

namespace stochorder {

namespace {

constexpr double kScanSlack = 1e-9;  // relative slack for monotonicity scans

double fd_step(double x) { return std::max(1e-6, 1e-5 * x); }

double xr_value(const BaselineFamily& fam, double x) {
  return x * baseline_reversed_hazard(fam, x);
}

double s_value(const BaselineFamily& fam, double x) {
  return x * (baseline_reversed_hazard(fam, x) - h_log_derivative(fam, x));
}

// integral_0^1 w(u) h(yu) du.
// For large y the mass sits in a layer of width ~1/y at the origin, on top of
// the u^c endpoint power; geometric panels toward 0 resolve the layer and the
// final sliver absorbs the power by substitution. All contributions are
// positive, so the panel sum loses no precision.
QuadratureResult w_weighted_h_integral(const BaselineFamily& fam, double y) {
  const double c = w_exponent(fam);
  auto integrand = [&](double u) { return std::pow(u, c) * h_value(fam, y * u); };

  const double layer = std::min(1.0, 1.0 / y) / 64.0;
  QuadratureResult total;
  total.converged = true;
  double hi = 1.0;
  int k = 0;
  while (hi * 0.5 > layer && k < 60) {
    const QuadratureResult panel = integrate_adaptive(integrand, hi * 0.5, hi, 1e-11);
    total.value += panel.value;
    total.abs_error += panel.abs_error;
    total.converged = total.converged && panel.converged;
    total.evaluations += panel.evaluations;
    hi *= 0.5;
    ++k;
  }
  // [0, hi]: substitute v = (u/hi)^(1+c); h is nearly constant this close in
  const double s = 1.0 + c;
  auto tail = [&](double v) {
    return h_value(fam, y * hi * std::pow(v, 1.0 / s));
  };
  const QuadratureResult last = integrate_adaptive(tail, 0.0, 1.0, 1e-11);
  total.value += last.value * std::pow(hi, s) / s;
  total.abs_error += last.abs_error * std::pow(hi, s) / s;
  total.converged = total.converged && last.converged;
  total.evaluations += last.evaluations;
  return total;
}

}  // namespace

EvalGrid audit_grid() { return EvalGrid::log_spaced(1e-4, 50.0, 4000); }

bool in_validated_regime(const BaselineFamily& fam) {
  if (fam.is_pgw()) return fam.shape2() <= 1.0;
  return fam.shape1() >= fam.shape2();
}

bool scan_monotone(std::span<const double> xs, std::span<const double> vs,
                   bool nonincreasing, char label,
                   AssumptionViolation* violation) {
  for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
    const double step = nonincreasing ? vs[i + 1] - vs[i] : vs[i] - vs[i + 1];
    const double scale = std::max(std::abs(vs[i]), std::abs(vs[i + 1]));
    if (step > kScanSlack * scale) {
      if (violation) *violation = {label, xs[i + 1], step / std::max(scale, 1e-300)};
      return false;
    }
  }
  return true;
}

bool check_assumption_a(const BaselineFamily& fam, const EvalGrid& grid,
                        AssumptionViolation* violation) {
  std::vector<double> vs(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) vs[i] = xr_value(fam, grid[i]);
  return scan_monotone(grid.points(), vs, /*nonincreasing=*/true, 'a', violation);
}

bool check_assumption_b(const BaselineFamily& fam, const EvalGrid& grid,
                        AssumptionViolation* violation) {
  std::vector<double> vs(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) vs[i] = s_value(fam, grid[i]);
  return scan_monotone(grid.points(), vs, /*nonincreasing=*/false, 'b', violation);
}

bool check_assumption_c(const BaselineFamily& fam, const EvalGrid& grid,
                        AssumptionViolation* violation) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid[i];
    const double hld = h_log_derivative(fam, x);
    if (!(hld < 0.0)) {
      if (violation) *violation = {'c', x, 0.0};
      return false;
    }
    // -w h^2 / h' = -f / (h'/h)
    const double bound = -baseline_pdf(fam, x) / hld;
    const double sv = baseline_survival(fam, x);
    if (sv > bound * (1.0 + kScanSlack)) {
      if (violation)
        *violation = {'c', x, (sv - bound) / std::max(bound, 1e-300)};
      return false;
    }
  }
  return true;
}

AssumptionReport check_assumptions(const BaselineFamily& fam, const EvalGrid& grid) {
  AssumptionReport rep;
  AssumptionViolation v;
  rep.assumption_a = check_assumption_a(fam, grid, &v);
  if (!rep.assumption_a && !rep.first_violation) rep.first_violation = v;
  rep.assumption_b = check_assumption_b(fam, grid, &v);
  if (!rep.assumption_b && !rep.first_violation) rep.first_violation = v;
  rep.assumption_c = check_assumption_c(fam, grid, &v);
  if (!rep.assumption_c && !rep.first_violation) rep.first_violation = v;
  return rep;
}

AssumptionReport check_assumptions(const BaselineFamily& fam) {
  const EvalGrid grid = audit_grid();
  return check_assumptions(fam, grid);
}

double xrh_integral_identity_residual(const BaselineFamily& fam, double y) {
  if (!(y > 0.0) || !std::isfinite(y))
    throw std::domain_error("xrh_integral_identity_residual requires y > 0");
  const QuadratureResult integral = w_weighted_h_integral(fam, y);
  if (!integral.converged)
    throw std::runtime_error("xrh_integral_identity_residual: quadrature did not converge");
  const double lhs = xr_value(fam, y);
  const double rhs = h_value(fam, y) / integral.value;
  return std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
}

double xrh_derivative_identity_residual(const BaselineFamily& fam, double y) {
  if (!(y > 0.0) || !std::isfinite(y))
    throw std::domain_error("xrh_derivative_identity_residual requires y > 0");
  // cap slope * h so central-difference truncation stays ~ (5e-4)^2/6
  const double slope = std::abs(h_log_derivative(fam, y)) + 2.0 / y;
  const double h = std::min(fd_step(y), 5e-4 / slope);
  const double lhs = (xr_value(fam, y + h) - xr_value(fam, y - h)) / (2.0 * h);
  const double rh = baseline_reversed_hazard(fam, y);
  const double rhs = y * rh * h_log_derivative(fam, y) - y * rh * rh +
                     (1.0 + w_exponent(fam)) * rh;
  return std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
}

double weighted_sum_inequality_margin(const BaselineFamily& fam, std::span<const double> y,
                            std::span<const double> shape_exps) {
  if (y.empty() || y.size() != shape_exps.size())
    throw std::invalid_argument("weighted_sum_inequality_margin: vector size mismatch");
  if (!in_validated_regime(fam))
    throw std::domain_error(
        "weighted_sum_inequality_margin: ordering assumptions not validated for "
        "this family (need pgw q <= 1 or gg alpha >= beta)");
  for (double a : shape_exps)
    if (!(a >= 1.0))
      throw std::domain_error("weighted_sum_inequality_margin requires shape exponents >= 1");
  double sum = 0.0;
  double lcdf = 0.0;
  double y_min = y[0];
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (!(y[i] > 0.0)) throw std::domain_error("weighted_sum_inequality_margin requires y > 0");
    sum += shape_exps[i] * y[i] * baseline_reversed_hazard(fam, y[i]);
    lcdf += shape_exps[i] * baseline_log_cdf(fam, y[i]);
    y_min = std::min(y_min, y[i]);
  }
  const double one_minus_prod = -std::expm1(lcdf);
  return sum - s_value(fam, y_min) * one_minus_prod;
}

double pgw_monotonicity_auxiliary(double x, double q) {
  if (!(x >= 1.0)) throw std::domain_error("pgw_monotonicity_auxiliary requires x >= 1");
  if (!(q > 0.0) || !(q <= 1.0))
    throw std::domain_error("pgw_monotonicity_auxiliary requires q in (0, 1]");
  const double qm1 = q - 1.0;
  return q * qm1 + std::exp(x - 1.0) * (qm1 * qm1 * x + q * x * x -
                                        std::pow(x, 1.0 + q) + 2.0 * q * (1.0 - q));
}

namespace {

// symmetric psi at the two-block point with one coordinate displaced; the
// Schur test needs per-coordinate partials, so exactly one entry moves
double two_block_psi_displaced(const BaselineFamily& fam, double y, double y_star,
                               int p, int n, std::size_t coord, double value) {
  std::vector<double> ys(static_cast<std::size_t>(n), y_star);
  std::fill(ys.begin(), ys.begin() + p, y);
  ys[coord] = value;
  const std::vector<double> ones(static_cast<std::size_t>(n), 1.0);
  return psi_function(fam, ys, ones);
}

}  // namespace

bool check_two_block_schur_condition(const BaselineFamily& fam, double y, double y_star,
                         int p, int n) {
  if (!(p >= 1) || !(p < n))
    throw std::invalid_argument("check_two_block_schur_condition requires 1 <= p < n");
  if (!(y > 0.0) || !(y_star > 0.0))
    throw std::domain_error("check_two_block_schur_condition requires positive y, y*");
  const double hy = fd_step(y), hs = fd_step(y_star);
  const std::size_t low_coord = 0;                          // inside the y block
  const std::size_t high_coord = static_cast<std::size_t>(n) - 1;  // y* block
  const double dpsi_dy =
      (two_block_psi_displaced(fam, y, y_star, p, n, low_coord, y + hy) -
       two_block_psi_displaced(fam, y, y_star, p, n, low_coord, y - hy)) /
      (2.0 * hy);
  const double dpsi_dystar =
      (two_block_psi_displaced(fam, y, y_star, p, n, high_coord, y_star + hs) -
       two_block_psi_displaced(fam, y, y_star, p, n, high_coord, y_star - hs)) /
      (2.0 * hs);
  const double lhs = (std::log(y) - std::log(y_star)) *
                     (y * dpsi_dy - y_star * dpsi_dystar);
  const double scale = std::abs(std::log(y) - std::log(y_star)) *
                       (std::abs(y * dpsi_dy) + std::abs(y_star * dpsi_dystar));
  return lhs <= 1e-8 * scale + 1e-12;
}

GeometricMeanExtremum gm_extremum_margin(const BaselineFamily& fam,
                                      std::span<const double> shape_exps,
                                      std::span<const double> x) {
  if (x.empty() || x.size() != shape_exps.size())
    throw std::invalid_argument("gm_extremum_margin: vector size mismatch");
  double wsum = 0.0, acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!(x[i] > 0.0)) throw std::domain_error("gm_extremum_margin requires x > 0");
    wsum += shape_exps[i];
    acc += shape_exps[i] * std::log(x[i]);
  }
  const double gm = std::exp(acc / wsum);
  const std::vector<double> gm_vec(x.size(), gm);
  GeometricMeanExtremum out{};
  out.psi_at_x = psi_function(fam, x, shape_exps);
  out.psi_at_gm = psi_function(fam, gm_vec, shape_exps);
  out.margin = out.psi_at_gm - out.psi_at_x;
  return out;
}

}  // namespace stochorder

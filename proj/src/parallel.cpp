#include "stochorder/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "stochorder/special_functions.hpp"

namespace stochorder {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLogSurvivalFloor = -690.77552789821371;  // log(1e-300)
// below this every component is effectively dead and the system survival is
// the first-order sum of component survivals
constexpr double kAllDeadLog = -37.0;

struct LogParts {
  double log_cdf;       // sum a_i log F_i
  double log_survival;  // log(1 - prod F_i^(a_i))
};

LogParts system_log_parts(const ParallelSystem& s, double x) {
  const auto& comps = s.components();
  double lcdf = 0.0;
  double max_ls = -kInf;
  for (const auto& c : comps)
    max_ls = std::max(max_ls, baseline_log_survival(c.family, c.lambda * x));

  if (max_ls < kAllDeadLog) {
    // logsumexp of log(a_i) + log s_i
    double lse = -kInf;
    for (const auto& c : comps) {
      const double t = std::log(c.shape_exp) +
                       baseline_log_survival(c.family, c.lambda * x);
      if (t > lse) lse = t;
    }
    double acc = 0.0;
    for (const auto& c : comps) {
      const double t = std::log(c.shape_exp) +
                       baseline_log_survival(c.family, c.lambda * x);
      acc += std::exp(t - lse);
    }
    for (const auto& c : comps) lcdf += log_cdf(c, x);
    return {lcdf, lse + std::log(acc)};
  }

  for (const auto& c : comps) lcdf += log_cdf(c, x);
  if (lcdf == -kInf) return {lcdf, 0.0};
  return {lcdf, log1mexp(lcdf)};
}

}  // namespace

EvalGrid::EvalGrid(std::vector<double> pts) : points_(std::move(pts)) {
  if (points_.empty()) throw std::invalid_argument("grid must be nonempty");
  double prev = 0.0;
  for (double p : points_) {
    if (!(p > prev) || !std::isfinite(p))
      throw std::invalid_argument("grid must be strictly increasing and positive");
    prev = p;
  }
}

EvalGrid EvalGrid::log_spaced(double lo, double hi, std::size_t n) {
  if (!(lo > 0.0) || !(hi > lo) || n < 2)
    throw std::invalid_argument("log_spaced needs 0 < lo < hi and n >= 2");
  std::vector<double> pts(n);
  const double llo = std::log(lo), lhi = std::log(hi);
  for (std::size_t i = 0; i < n; ++i)
    pts[i] = std::exp(llo + (lhi - llo) * static_cast<double>(i) /
                                static_cast<double>(n - 1));
  pts.front() = lo;
  pts.back() = hi;
  return EvalGrid(std::move(pts));
}

EvalGrid EvalGrid::default_grid() { return log_spaced(1e-3, 20.0, 2000); }

std::string to_string(CurveKind kind) {
  switch (kind) {
    case CurveKind::cdf: return "cdf";
    case CurveKind::survival: return "survival";
    case CurveKind::hazard: return "hazard";
    case CurveKind::density: return "density";
  }
  return "?";
}

void SystemCurve::write_csv(std::ostream& os) const {
  os << "x," << to_string(kind) << "\n";
  char buf[64];
  for (std::size_t i = 0; i < grid.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", grid[i], values[i]);
    os << buf;
  }
}

double system_log_cdf(const ParallelSystem& s, double x) {
  double acc = 0.0;
  for (const auto& c : s.components()) acc += log_cdf(c, x);
  return acc;
}

double system_cdf(const ParallelSystem& s, double x) {
  return std::exp(system_log_cdf(s, x));
}

double system_survival(const ParallelSystem& s, double x) {
  const double lf = system_log_cdf(s, x);
  return lf == -kInf ? 1.0 : -std::expm1(lf);
}

double system_log_survival(const ParallelSystem& s, double x) {
  return system_log_parts(s, x).log_survival;
}

double system_hazard(const ParallelSystem& s, double x) {
  if (!(x >= 1e-10) || !std::isfinite(x))
    throw std::domain_error("system_hazard requires x >= 1e-10");
  const LogParts parts = system_log_parts(s, x);
  if (parts.log_survival < kLogSurvivalFloor) return kInf;
  double sum = 0.0;
  for (const auto& c : s.components())
    sum += c.shape_exp * c.lambda * baseline_reversed_hazard(c.family, c.lambda * x);
  return std::exp(parts.log_cdf - parts.log_survival + std::log(sum));
}

double conditional_survival(const ParallelSystem& s, double x, double t) {
  if (!(x > 0.0) || !(t >= 0.0) || !std::isfinite(x) || !std::isfinite(t))
    throw std::domain_error("conditional_survival requires x > 0, t >= 0");
  const double ls_x = system_log_survival(s, x);
  if (ls_x < kLogSurvivalFloor)
    throw std::domain_error("conditional_survival undefined: survival underflow at x");
  const double ls_xt = system_log_survival(s, x + t);
  return std::min(1.0, std::exp(ls_xt - ls_x));
}

double psi_function(const BaselineFamily& fam, std::span<const double> y,
                    std::span<const double> shape_exps) {
  if (y.empty() || y.size() != shape_exps.size())
    throw std::invalid_argument("psi_function: vector size mismatch");
  const std::size_t n = y.size();
  std::vector<double> log_terms(n);  // log(a_i y_i rh(y_i)), deep tails included
  double lcdf = 0.0;
  double max_ls = -kInf;
  double max_term = -kInf;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(y[i] > 0.0)) throw std::domain_error("psi_function requires y > 0");
    lcdf += shape_exps[i] * baseline_log_cdf(fam, y[i]);
    log_terms[i] = std::log(shape_exps[i] * y[i]) + baseline_log_pdf(fam, y[i]) -
                   baseline_log_cdf(fam, y[i]);
    max_term = std::max(max_term, log_terms[i]);
    max_ls = std::max(max_ls, baseline_log_survival(fam, y[i]));
  }
  double sum_scaled = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum_scaled += std::exp(log_terms[i] - max_term);
  const double lsum = max_term + std::log(sum_scaled);

  double ls;
  if (max_ls < kAllDeadLog) {
    // every component is effectively dead: 1 - prod F^(a) ~ sum a_i s_i
    double lse = -kInf;
    for (std::size_t i = 0; i < n; ++i)
      lse = std::max(lse, std::log(shape_exps[i]) +
                              baseline_log_survival(fam, y[i]));
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      acc += std::exp(std::log(shape_exps[i]) +
                      baseline_log_survival(fam, y[i]) - lse);
    ls = lse + std::log(acc);
  } else if (lcdf == -kInf) {
    ls = 0.0;
  } else {
    ls = log1mexp(lcdf);
  }
  return std::exp(lcdf - ls + lsum);
}

SystemCurve tabulate(const ParallelSystem& s, const EvalGrid& grid, CurveKind kind,
                     int threads) {
  std::vector<double> vals(grid.size());
  auto eval = [&](std::size_t i) {
    const double x = grid[i];
    switch (kind) {
      case CurveKind::cdf: return system_cdf(s, x);
      case CurveKind::survival: return system_survival(s, x);
      case CurveKind::hazard: return system_hazard(s, x);
      case CurveKind::density:
        return system_hazard(s, x) * system_survival(s, x);
    }
    return 0.0;
  };
  const int nw = std::max(1, threads);
  if (nw == 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) vals[i] = eval(i);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < nw; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < grid.size(); i += nw) vals[i] = eval(i);
      });
    for (auto& th : pool) th.join();
  }
  return SystemCurve{grid, std::move(vals), kind};
}

}  // namespace stochorder

#include "stochorder/mcsim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include "stochorder/rng.hpp"
#include "stochorder/special_functions.hpp"

namespace stochorder {

double component_quantile(const ComponentSpec& c, double u) {
  if (!(u > 0.0) || !(u < 1.0))
    throw std::domain_error("component_quantile requires u in (0, 1)");
  // baseline CDF level, kept strictly inside (0, 1) against rounding
  const double v = std::clamp(std::exp(std::log(u) / c.shape_exp),
                              1e-300, 1.0 - 0x1.0p-53);
  if (c.family.is_pgw()) {
    const double p = c.family.shape1(), q = c.family.shape2();
    // T = 1 - log(1 - v), x = (T^q - 1)^(1/p) / lambda
    const double log_t = std::log1p(-std::log1p(-v));
    const double tq_m1 = std::expm1(q * log_t);
    return std::exp(std::log(tq_m1) / p) / c.lambda;
  }
  const double alpha = c.family.shape1(), beta = c.family.shape2();
  const double z = inv_reg_lower_gamma(beta / alpha, v);
  return std::exp(std::log(z) / alpha) / c.lambda;
}

EmpiricalResult empirical_survival(const SimConfig& cfg) {
  const auto& comps = cfg.system.components();
  const std::size_t n_comp = comps.size();
  const std::size_t n = cfg.n_samples;
  if (n == 0) throw std::invalid_argument("n_samples must be positive");

  const CounterRng rng(cfg.seed);
  std::vector<double> maxima(n);
  auto fill_range = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t i = lo; i < hi; ++i) {
      double m = 0.0;
      for (std::size_t j = 0; j < n_comp; ++j) {
        const double u = rng.uniform(i * n_comp + j);
        m = std::max(m, component_quantile(comps[j], u));
      }
      maxima[i] = m;
    }
  };

  const int nw = std::max(1, cfg.threads);
  if (nw == 1) {
    fill_range(0, n);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + nw - 1) / nw;
    for (int w = 0; w < nw; ++w) {
      const std::size_t lo = std::min(n, w * chunk);
      const std::size_t hi = std::min(n, lo + chunk);
      pool.emplace_back(fill_range, lo, hi);
    }
    for (auto& th : pool) th.join();
  }

  std::sort(maxima.begin(), maxima.end());
  std::vector<double> emp(cfg.grid.size());
  double sup_gap = 0.0;
  for (std::size_t k = 0; k < cfg.grid.size(); ++k) {
    const double x = cfg.grid[k];
    const auto it = std::upper_bound(maxima.begin(), maxima.end(), x);
    emp[k] = static_cast<double>(maxima.end() - it) / static_cast<double>(n);
    sup_gap = std::max(sup_gap, std::abs(emp[k] - system_survival(cfg.system, x)));
  }
  return {SystemCurve{cfg.grid, std::move(emp), CurveKind::survival}, sup_gap};
}

}  // namespace stochorder

#include "stochorder/ordercheck.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "stochorder/preorders.hpp"
#include "stochorder/rng.hpp"

namespace stochorder {

namespace {

constexpr double kStSlack = 1e-12;
constexpr double kHrSlack = 1e-10;
constexpr double kLogCdfSlack = 1e-10;    // lower-tail comparisons, log scale
constexpr double kHazardRelSlack = 1e-9;  // pointwise hazard dominance
constexpr double kLogSurvivalFloor = -690.77552789821371;  // log(1e-300)
constexpr double kScaleBoundaryTol = 1e-9;  // ties count as holding

// log survival difference A - B at points where both are representable;
// NaN marks a skipped point
std::vector<double> log_survival_diff(const ParallelSystem& a,
                                      const ParallelSystem& b,
                                      const std::vector<double>& xs) {
  std::vector<double> d(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double la = system_log_survival(a, xs[i]);
    const double lb = system_log_survival(b, xs[i]);
    d[i] = (la < kLogSurvivalFloor || lb < kLogSurvivalFloor)
               ? std::numeric_limits<double>::quiet_NaN()
               : la - lb;
  }
  return d;
}

// deepest drop of d below its running maximum; returns (depth, index)
std::pair<double, std::size_t> deepest_drop(const std::vector<double>& d) {
  double run_max = -std::numeric_limits<double>::infinity();
  double depth = 0.0;
  std::size_t where = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (std::isnan(d[i])) continue;
    run_max = std::max(run_max, d[i]);
    if (run_max - d[i] > depth) {
      depth = run_max - d[i];
      where = i;
    }
  }
  return {depth, where};
}

}  // namespace

OrderVerdict check_st(const ParallelSystem& a, const ParallelSystem& b,
                      const EvalGrid& grid) {
  OrderVerdict v{OrderKind::st, true, std::nullopt, 0.0};
  double worst = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid[i];
    const double diff = system_survival(a, x) - system_survival(b, x);
    if (diff < worst) worst = diff;
    bool violated = diff < -kStSlack;
    // survival_A >= survival_B is cdf_B >= cdf_A; in the lower tail only the
    // log-cdf comparison has the resolution to see a violation
    if (!violated) {
      const double lfa = system_log_cdf(a, x);
      const double lfb = system_log_cdf(b, x);
      if (lfa != -std::numeric_limits<double>::infinity() ||
          lfb != -std::numeric_limits<double>::infinity())
        violated = lfa - lfb > kLogCdfSlack;
    }
    if (violated && v.holds) {
      v.holds = false;
      v.witness_x = x;
    }
  }
  v.margin = worst;
  return v;
}

OrderVerdict check_hr(const ParallelSystem& a, const ParallelSystem& b,
                      const EvalGrid& grid) {
  OrderVerdict v{OrderKind::hr, true, std::nullopt, 0.0};

  // pointwise hazard dominance: hazard_B >= hazard_A up to relative slack.
  // This is the only form with enough resolution near x -> 0, where the
  // log-survival difference is far below any additive slack.
  std::optional<double> hazard_witness;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double x = grid[i];
    const double ra = system_hazard(a, x);
    const double rb = system_hazard(b, x);
    if (std::isinf(ra) || std::isinf(rb)) continue;
    if (ra - rb > kHazardRelSlack * std::max(ra, rb)) {
      hazard_witness = x;
      break;
    }
  }

  const auto d = log_survival_diff(a, b, grid.points());
  auto [depth, where] = deepest_drop(d);
  if (depth <= kHrSlack) {
    if (hazard_witness) {
      v.holds = false;
      v.witness_x = hazard_witness;
    }
    v.margin = depth == 0.0 ? 0.0 : -depth;
    return v;
  }

  // second pass: 4x denser log grid across the offending span
  std::size_t peak = where;
  double run_max = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i <= where; ++i) {
    if (std::isnan(d[i])) continue;
    if (d[i] > run_max) {
      run_max = d[i];
      peak = i;
    }
  }
  const std::size_t lo_i = peak > 0 ? peak - 1 : 0;
  const std::size_t hi_i = std::min(where + 1, grid.size() - 1);
  const std::size_t n_fine = 4 * (hi_i - lo_i) + 1;
  const EvalGrid fine = EvalGrid::log_spaced(grid[lo_i], grid[hi_i],
                                             std::max<std::size_t>(n_fine, 5));
  const auto df = log_survival_diff(a, b, fine.points());
  auto [fdepth, fwhere] = deepest_drop(df);
  if (fdepth <= kHrSlack) {
    if (hazard_witness) {
      v.holds = false;
      v.witness_x = hazard_witness;
    }
    v.margin = fdepth == 0.0 ? 0.0 : -fdepth;
    return v;
  }
  v.holds = false;
  v.margin = -fdepth;
  // first refined point where the drop exceeds the slack
  double rmax = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i <= fwhere; ++i) {
    if (std::isnan(df[i])) continue;
    rmax = std::max(rmax, df[i]);
    if (rmax - df[i] > kHrSlack) {
      v.witness_x = fine[i];
      break;
    }
  }
  if (!v.witness_x) v.witness_x = fine[fwhere];
  if (hazard_witness && *hazard_witness < *v.witness_x) v.witness_x = hazard_witness;
  return v;
}

EquivalenceResult pgw_equivalence_harness(double p, double q,
                                    const std::vector<double>& lambdas,
                                    double lambda_hom, const EvalGrid& grid) {
  const BaselineFamily fam = BaselineFamily::pgw(p, q);
  std::vector<ComponentSpec> het, hom;
  for (double lam : lambdas) {
    het.emplace_back(fam, lam);
    hom.emplace_back(fam, lambda_hom);
  }
  const ParallelSystem x_sys{std::move(het)}, y_sys{std::move(hom)};
  const double gm = weighted_geometric_mean(ParamVector(lambdas));
  EquivalenceResult r{};
  r.cond_scale = lambda_hom >= gm * (1.0 - kScaleBoundaryTol);
  r.cond_hr = check_hr(x_sys, y_sys, grid).holds;
  r.cond_st = check_st(x_sys, y_sys, grid).holds;
  return r;
}

EquivalenceResult egg_equivalence_harness(double alpha, double beta,
                                    const std::vector<double>& gammas,
                                    const std::vector<double>& lambdas,
                                    double lambda_hom, const EvalGrid& grid) {
  if (gammas.size() != lambdas.size())
    throw std::invalid_argument("egg_equivalence_harness: size mismatch");
  const BaselineFamily fam = BaselineFamily::gg(alpha, beta);
  std::vector<ComponentSpec> het, hom;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    het.emplace_back(fam, lambdas[i], gammas[i]);
    hom.emplace_back(fam, lambda_hom, gammas[i]);
  }
  const ParallelSystem x_sys{std::move(het)}, y_sys{std::move(hom)};
  const double wg = weighted_geometric_mean(ParamVector(lambdas, gammas));
  EquivalenceResult r{};
  r.cond_scale = lambda_hom >= wg * (1.0 - kScaleBoundaryTol);
  r.cond_hr = check_hr(x_sys, y_sys, grid).holds;
  r.cond_st = check_st(x_sys, y_sys, grid).holds;
  return r;
}

EquivalenceResult outlier_equivalence_harness(const MultipleOutlierSpec& spec,
                                    const EvalGrid& grid) {
  std::vector<ComponentSpec> xs, ys;
  std::vector<double> lam_block, mu_block;
  for (int i = 0; i < spec.n1; ++i) {
    xs.emplace_back(spec.family, spec.lambda1);
    ys.emplace_back(spec.family, spec.mu1);
    lam_block.push_back(spec.lambda1);
    mu_block.push_back(spec.mu1);
  }
  for (int i = 0; i < spec.n2; ++i) {
    xs.emplace_back(spec.family, spec.lambda2);
    ys.emplace_back(spec.family, spec.mu2);
    lam_block.push_back(spec.lambda2);
    mu_block.push_back(spec.mu2);
  }
  const ParallelSystem x_sys{std::move(xs)}, y_sys{std::move(ys)};
  EquivalenceResult r{};
  r.cond_scale = p_larger(ParamVector(lam_block), ParamVector(mu_block));
  r.cond_hr = check_hr(x_sys, y_sys, grid).holds;
  r.cond_st = check_st(x_sys, y_sys, grid).holds;
  return r;
}

std::array<double, 3> example41_ratios() {
  const BaselineFamily fam = BaselineFamily::pgw(2.0, 1.0);
  const ParallelSystem x_sys{{ComponentSpec(fam, 0.1), ComponentSpec(fam, 1.0),
                              ComponentSpec(fam, 9.0)}};
  const ParallelSystem y_sys{{ComponentSpec(fam, 0.1), ComponentSpec(fam, 4.0),
                              ComponentSpec(fam, 6.0)}};
  std::array<double, 3> out{};
  const double xs[3] = {0.8, 1.0, 1.9};
  for (int i = 0; i < 3; ++i)
    out[i] = system_survival(x_sys, xs[i]) / system_survival(y_sys, xs[i]);
  return out;
}

SweepResult pgw_equivalence_sweep(int trials, std::uint64_t seed, const EvalGrid& grid) {
  SweepResult out;
  out.trials = trials;
  const CounterRng master(seed);
  for (int t = 0; t < trials; ++t) {
    const CounterRng rng = master.split(static_cast<std::uint64_t>(t));
    const double p = rng.log_uniform(0, 0.5, 3.0);
    const double q = rng.uniform_range(1, 0.2, 1.0);
    const int n = 2 + static_cast<int>(rng.bits(2) % 5);  // 2..6
    std::vector<double> lambdas(n);
    for (int i = 0; i < n; ++i)
      lambdas[i] = rng.log_uniform(10 + static_cast<std::uint64_t>(i), 0.1, 10.0);
    const double gm = weighted_geometric_mean(ParamVector(lambdas));
    const double lambda_hom = gm * rng.log_uniform(3, 0.5, 2.0);
    if (!pgw_equivalence_harness(p, q, lambdas, lambda_hom, grid).agree()) {
      ++out.disagreements;
      out.failed_trials.push_back(t);
    }
  }
  return out;
}

SweepResult egg_equivalence_sweep(int trials, std::uint64_t seed, const EvalGrid& grid) {
  SweepResult out;
  out.trials = trials;
  const CounterRng master(seed);
  for (int t = 0; t < trials; ++t) {
    const CounterRng rng = master.split(0x9E00u + static_cast<std::uint64_t>(t));
    const double alpha = rng.log_uniform(0, 0.5, 3.0);
    const double beta = alpha * rng.uniform_range(1, 0.3, 1.0);  // alpha >= beta
    const int n = 2 + static_cast<int>(rng.bits(2) % 5);
    std::vector<double> lambdas(n), gammas(n);
    for (int i = 0; i < n; ++i) {
      lambdas[i] = rng.log_uniform(10 + static_cast<std::uint64_t>(i), 0.1, 10.0);
      gammas[i] = rng.uniform_range(100 + static_cast<std::uint64_t>(i), 1.0, 3.0);
    }
    const double wg = weighted_geometric_mean(ParamVector(lambdas, gammas));
    const double lambda_hom = wg * rng.log_uniform(3, 0.5, 2.0);
    if (!egg_equivalence_harness(alpha, beta, gammas, lambdas, lambda_hom, grid).agree()) {
      ++out.disagreements;
      out.failed_trials.push_back(t);
    }
  }
  return out;
}

SweepResult outlier_equivalence_sweep(int trials, std::uint64_t seed, FamilyKind kind,
                            const EvalGrid& grid) {
  SweepResult out;
  out.trials = trials;
  const CounterRng master(seed);
  for (int t = 0; t < trials; ++t) {
    const CounterRng rng = master.split(0x4200u + static_cast<std::uint64_t>(t));
    const double q = rng.uniform_range(0, 0.2, 1.0);
    const double shape = rng.log_uniform(1, 0.5, 3.0);
    const BaselineFamily fam = kind == FamilyKind::pgw
                                   ? BaselineFamily::pgw(shape, q)
                                   : BaselineFamily::gg(shape, q * shape);
    double scales[4];
    for (int i = 0; i < 4; ++i)
      scales[i] = rng.log_uniform(10 + static_cast<std::uint64_t>(i), 0.1, 10.0);
    std::sort(scales, scales + 4);
    MultipleOutlierSpec spec{fam,
                             1 + static_cast<int>(rng.bits(2) % 4),
                             1 + static_cast<int>(rng.bits(3) % 4),
                             scales[0], scales[3], scales[1], scales[2]};
    if (!outlier_equivalence_harness(spec, grid).agree()) {
      ++out.disagreements;
      out.failed_trials.push_back(t);
    }
  }
  return out;
}

}  // namespace stochorder

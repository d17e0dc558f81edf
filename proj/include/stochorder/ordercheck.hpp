#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "stochorder/dists.hpp"
#include "stochorder/parallel.hpp"

namespace stochorder {

enum class OrderKind { hr, st };

/// Outcome of a grid-based stochastic-order check of A against B.
/// For st the margin is the worst value of survival_A - survival_B; for hr it
/// is minus the deepest drop of log survival_A - log survival_B below its
/// running maximum. holds == false implies witness_x is set.
struct OrderVerdict {
  OrderKind order;
  bool holds;
  std::optional<double> witness_x;
  double margin;
};

/// A >=_st B: survival_A >= survival_B - 1e-12 at every grid point, plus the
/// same predicate on the log-cdf scale (cdf_B >= cdf_A within log slack
/// 1e-10), which is the only scale with resolution in the lower tail.
OrderVerdict check_st(const ParallelSystem& a, const ParallelSystem& b,
                      const EvalGrid& grid);

/// A >=_hr B, checked two ways: log survival_A - log survival_B nondecreasing
/// across the grid within slack 1e-10 (candidate violations re-examined on a
/// 4x denser local grid), and pointwise hazard dominance hazard_B >= hazard_A
/// within relative slack 1e-9, which resolves violations near x -> 0.
OrderVerdict check_hr(const ParallelSystem& a, const ParallelSystem& b,
                      const EvalGrid& grid);

/// Joint outcome of one equivalence trial: the scale comparison, the hr
/// verdict and the st verdict must all agree.
struct EquivalenceResult {
  bool cond_scale;
  bool cond_hr;
  bool cond_st;
  bool agree() const { return cond_scale == cond_hr && cond_hr == cond_st; }
};

/// Heterogeneous PGW(p, q, lambda_i) system against the homogeneous system at
/// lambda_hom; the scale condition compares lambda_hom with the geometric
/// mean of the lambdas. Valid regime: q <= 1.
EquivalenceResult pgw_equivalence_harness(double p, double q,
                                    const std::vector<double>& lambdas,
                                    double lambda_hom, const EvalGrid& grid);

/// Exponentiated GG components (exponents gammas >= 1) against the
/// homogeneous-scale system with the same exponents; the scale condition
/// uses the gamma-weighted geometric mean. Valid regime: alpha >= beta.
EquivalenceResult egg_equivalence_harness(double alpha, double beta,
                                    const std::vector<double>& gammas,
                                    const std::vector<double>& lambdas,
                                    double lambda_hom, const EvalGrid& grid);

/// Two-block (multiple-outlier) comparison spec. Intended regime
/// lambda1 <= mu1 <= mu2 <= lambda2; violations are reported, not rejected.
struct MultipleOutlierSpec {
  BaselineFamily family;
  int n1;
  int n2;
  double lambda1;
  double lambda2;
  double mu1;
  double mu2;

  bool regime_ok() const {
    return lambda1 <= mu1 && mu1 <= mu2 && mu2 <= lambda2;
  }
};

/// Block vectors (lambda1 x n1, lambda2 x n2) vs (mu1 x n1, mu2 x n2):
/// the p-larger comparison against the hr and st verdicts of the systems.
EquivalenceResult outlier_equivalence_harness(const MultipleOutlierSpec& spec,
                                    const EvalGrid& grid);

/// Survival ratios of the PGW(2,1) systems lambda=(0.1,1,9) vs mu=(0.1,4,6)
/// at x in {0.8, 1.0, 1.9}.
std::array<double, 3> example41_ratios();

/// Seeded random-trial sweeps for the three equivalences. Each trial draws
/// parameters from its validated regime; a disagreement means the three
/// conditions did not coincide.
struct SweepResult {
  int trials = 0;
  int disagreements = 0;
  std::vector<int> failed_trials;
};

SweepResult pgw_equivalence_sweep(int trials, std::uint64_t seed, const EvalGrid& grid);
SweepResult egg_equivalence_sweep(int trials, std::uint64_t seed, const EvalGrid& grid);
SweepResult outlier_equivalence_sweep(int trials, std::uint64_t seed, FamilyKind kind,
                            const EvalGrid& grid);

}  // namespace stochorder

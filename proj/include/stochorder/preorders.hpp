#pragma once

#include <vector>

namespace stochorder {

/// Positive parameter vector with optional positive weights (default all-ones).
struct ParamVector {
  explicit ParamVector(std::vector<double> values);
  ParamVector(std::vector<double> values, std::vector<double> weights);

  std::vector<double> values;
  std::vector<double> weights;
};

/// Majorization: with both vectors arranged increasingly, every proper prefix
/// sum of x is <= that of y and the totals agree (relative tolerance 1e-12).
/// Weighted vectors are rejected. Unequal totals return false, not an error.
bool majorizes(const ParamVector& x, const ParamVector& y);

/// p-larger order: every prefix product of the increasing arrangement of x is
/// <= that of y, compared as prefix sums of logs with tolerance 1e-12.
bool p_larger(const ParamVector& x, const ParamVector& y);

/// prod v_i^(w_i / sum w).
double weighted_geometric_mean(const ParamVector& v);

double arithmetic_mean(const ParamVector& v);

}  // namespace stochorder

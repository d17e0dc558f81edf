#include "stochorder/preorders.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace stochorder {

namespace {

constexpr double kRelTol = 1e-12;

void validate_positive(const std::vector<double>& v, const char* what) {
  if (v.empty()) throw std::invalid_argument(std::string(what) + " must be nonempty");
  for (double e : v)
    if (!(e > 0.0) || !std::isfinite(e))
      throw std::invalid_argument(std::string(what) + " entries must be positive and finite");
}

std::vector<double> sorted_ascending(const std::vector<double>& v) {
  std::vector<double> s = v;
  std::sort(s.begin(), s.end());
  return s;
}

bool is_unweighted(const ParamVector& v) {
  return std::all_of(v.weights.begin(), v.weights.end(),
                     [](double w) { return w == 1.0; });
}

// lhs <= rhs up to relative slack
bool leq_tol(double lhs, double rhs) {
  return lhs <= rhs + kRelTol * std::max(std::abs(lhs), std::abs(rhs));
}

}  // namespace

ParamVector::ParamVector(std::vector<double> v)
    : ParamVector(std::move(v), {}) {}

ParamVector::ParamVector(std::vector<double> v, std::vector<double> w)
    : values(std::move(v)), weights(std::move(w)) {
  validate_positive(values, "values");
  if (weights.empty()) weights.assign(values.size(), 1.0);
  if (weights.size() != values.size())
    throw std::invalid_argument("weights must match values in length");
  validate_positive(weights, "weights");
}

bool majorizes(const ParamVector& x, const ParamVector& y) {
  if (x.values.size() != y.values.size())
    throw std::invalid_argument("majorizes: length mismatch");
  if (!is_unweighted(x) || !is_unweighted(y))
    throw std::invalid_argument("majorizes: weighted vectors not supported");
  const auto xs = sorted_ascending(x.values);
  const auto ys = sorted_ascending(y.values);
  double sx = 0.0, sy = 0.0;
  const std::size_t n = xs.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    sx += xs[i];
    sy += ys[i];
    if (!leq_tol(sx, sy)) return false;
  }
  sx += xs[n - 1];
  sy += ys[n - 1];
  return std::abs(sx - sy) <= kRelTol * std::max(std::abs(sx), std::abs(sy));
}

bool p_larger(const ParamVector& x, const ParamVector& y) {
  if (x.values.size() != y.values.size())
    throw std::invalid_argument("p_larger: length mismatch");
  const auto xs = sorted_ascending(x.values);
  const auto ys = sorted_ascending(y.values);
  double lx = 0.0, ly = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    lx += std::log(xs[i]);
    ly += std::log(ys[i]);
    if (!(lx <= ly + kRelTol * std::max({std::abs(lx), std::abs(ly), 1.0})))
      return false;
  }
  return true;
}

double weighted_geometric_mean(const ParamVector& v) {
  double wsum = std::accumulate(v.weights.begin(), v.weights.end(), 0.0);
  double acc = 0.0;
  for (std::size_t i = 0; i < v.values.size(); ++i)
    acc += v.weights[i] * std::log(v.values[i]);
  return std::exp(acc / wsum);
}

double arithmetic_mean(const ParamVector& v) {
  return std::accumulate(v.values.begin(), v.values.end(), 0.0) /
         static_cast<double>(v.values.size());
}

}  // namespace stochorder

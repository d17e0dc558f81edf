#include "stochorder/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace stochorder {

namespace {

// 15-point Gauss-Legendre nodes/weights on [-1, 1].
constexpr double kNodes[8] = {0.0,
                              0.2011940939974345,
                              0.3941513470775634,
                              0.5709721726085388,
                              0.7244177313601701,
                              0.8482065834104272,
                              0.9372733924007060,
                              0.9879925180204854};
constexpr double kWeights[8] = {0.2025782419255613, 0.1984314853271116,
                                0.1861610000155622, 0.1662692058169939,
                                0.1395706779261543, 0.1071592204671719,
                                0.0703660474881081, 0.0307532419961173};

double gl15(const std::function<double(double)>& f, double a, double b, long& evals) {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double acc = kWeights[0] * f(mid);
  for (int i = 1; i < 8; ++i) {
    const double dx = half * kNodes[i];
    acc += kWeights[i] * (f(mid - dx) + f(mid + dx));
  }
  evals += 15;
  return acc * half;
}

constexpr long kEvalBudget = 2'000'000;

void adapt(const std::function<double(double)>& f, double a, double b,
           double whole, double tol, int depth, QuadratureResult& out) {
  const double mid = 0.5 * (a + b);
  const double left = gl15(f, a, mid, out.evaluations);
  const double right = gl15(f, mid, b, out.evaluations);
  const double diff = left + right - whole;
  // the halving tolerance must not be pushed below the roundoff floor of the
  // node sums, or refinement can never terminate
  const double floor_tol =
      4e-16 * (std::abs(left) + std::abs(right) + std::abs(whole));
  if (std::abs(diff) <= std::max(tol, floor_tol) || depth <= 0 ||
      out.evaluations > kEvalBudget) {
    out.value += left + right;
    out.abs_error += std::abs(diff);
    if (std::abs(diff) > std::max(tol, floor_tol) && std::abs(diff) > 1e-12 * std::abs(left + right))
      out.converged = false;
    return;
  }
  adapt(f, a, mid, left, 0.5 * tol, depth - 1, out);
  adapt(f, mid, b, right, 0.5 * tol, depth - 1, out);
}

}  // namespace

QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b, double rel_tol,
                                    int max_depth) {
  QuadratureResult out;
  out.converged = true;
  if (a == b) return out;
  const double first = gl15(f, a, b, out.evaluations);
  const double tol = std::max(rel_tol * std::abs(first), 1e-305);
  adapt(f, a, b, first, tol, max_depth, out);
  return out;
}

QuadratureResult integrate_power_weighted_01(double c,
                                             const std::function<double(double)>& g,
                                             double rel_tol) {
  if (!(c > -1.0)) throw std::domain_error("power weight exponent must exceed -1");
  if (c >= 0.0) {
    auto f = [&](double u) { return std::pow(u, c) * g(u); };
    return integrate_adaptive(f, 0.0, 1.0, rel_tol);
  }
  // split at delta; on [0, delta] substitute v = u^(1+c):
  //   integral u^c g(u) du = 1/(1+c) * integral g(v^(1/(1+c))) dv over [0, delta^(1+c)]
  const double delta = 0.125;
  const double s = 1.0 + c;
  auto singular = [&](double v) { return g(std::pow(v, 1.0 / s)); };
  QuadratureResult head = integrate_adaptive(singular, 0.0, std::pow(delta, s), rel_tol);
  auto regular = [&](double u) { return std::pow(u, c) * g(u); };
  QuadratureResult tail = integrate_adaptive(regular, delta, 1.0, rel_tol);
  QuadratureResult out;
  out.value = head.value / s + tail.value;
  out.abs_error = head.abs_error / s + tail.abs_error;
  out.converged = head.converged && tail.converged;
  out.evaluations = head.evaluations + tail.evaluations;
  return out;
}

}  // namespace stochorder

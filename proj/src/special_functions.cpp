#include "stochorder/special_functions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace stochorder {

namespace {

constexpr double kLogSqrt2Pi = 0.91893853320467274178;  // log(sqrt(2*pi))

// Lanczos g = 7, 9 coefficients.
constexpr double kLanczos[9] = {
    0.99999999999980993,   676.5203681218851,     -1259.1392167224028,
    771.32342877765313,    -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,  9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_log_core(double z) {
  // valid for z >= 0.5
  double acc = kLanczos[0];
  for (int i = 1; i < 9; ++i) acc += kLanczos[i] / (z - 1.0 + i);
  const double t = z + 6.5;
  return kLogSqrt2Pi + (z - 0.5) * std::log(t) - t + std::log(acc);
}

// Lower-gamma series: returns log of sum_{k>=0} z^k / (a (a+1) ... (a+k)).
double log_gamma_series_sum(double a, double z) {
  double term = 1.0 / a;
  double sum = term;
  for (int k = 1; k < 10000; ++k) {
    term *= z / (a + k);
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-17) break;
  }
  return std::log(sum);
}

// Upper-gamma continued fraction (modified Lentz): returns log of the CF value h
// with Q(a, z) = exp(a log z - z - lgamma(a)) * h.
double log_gamma_cf(double a, double z) {
  constexpr double kTiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
  double b = z + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) <= 1e-16) break;
  }
  return std::log(h);
}

void check_gamma_args(double a, double z) {
  if (!(a > 0.0) || !std::isfinite(a) || !(z >= 0.0) || !std::isfinite(z))
    throw std::domain_error("incomplete gamma: need a > 0, z >= 0, both finite");
}

}  // namespace

double log1mexp(double x) {
  if (x >= 0.0) throw std::domain_error("log1mexp requires x < 0");
  constexpr double kLogHalf = -0.6931471805599453;
  return x > kLogHalf ? std::log(-std::expm1(x)) : std::log1p(-std::exp(x));
}

double lgamma_pos(double x) {
  if (!(x > 0.0) || !std::isfinite(x))
    throw std::domain_error("lgamma_pos requires finite x > 0");
  if (x < 0.5) {
    // reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x)
    const double pi = 3.14159265358979323846;
    return std::log(pi / std::sin(pi * x)) - lanczos_log_core(1.0 - x);
  }
  return lanczos_log_core(x);
}

double gamma_pos(double x) { return std::exp(lgamma_pos(x)); }

double reg_lower_gamma(double a, double z) {
  check_gamma_args(a, z);
  if (z == 0.0) return 0.0;
  if (z < a + 1.0) {
    const double lp = a * std::log(z) - z - lgamma_pos(a) + log_gamma_series_sum(a, z);
    return std::exp(lp);
  }
  return 1.0 - reg_upper_gamma(a, z);
}

double reg_upper_gamma(double a, double z) {
  check_gamma_args(a, z);
  if (z == 0.0) return 1.0;
  if (z < a + 1.0) return 1.0 - reg_lower_gamma(a, z);
  const double lq = a * std::log(z) - z - lgamma_pos(a) + log_gamma_cf(a, z);
  return std::exp(lq);
}

double log_reg_lower_gamma(double a, double z) {
  check_gamma_args(a, z);
  if (z == 0.0) return -std::numeric_limits<double>::infinity();
  if (z < a + 1.0)
    return a * std::log(z) - z - lgamma_pos(a) + log_gamma_series_sum(a, z);
  const double lq = a * std::log(z) - z - lgamma_pos(a) + log_gamma_cf(a, z);
  if (lq >= 0.0) return -std::numeric_limits<double>::infinity();  // Q rounded to 1
  return log1mexp(lq);
}

double log_reg_upper_gamma(double a, double z) {
  check_gamma_args(a, z);
  if (z == 0.0) return 0.0;
  if (z >= a + 1.0)
    return a * std::log(z) - z - lgamma_pos(a) + log_gamma_cf(a, z);
  const double lp = a * std::log(z) - z - lgamma_pos(a) + log_gamma_series_sum(a, z);
  if (lp >= 0.0) return -std::numeric_limits<double>::infinity();
  return log1mexp(lp);
}

double inv_reg_lower_gamma(double a, double p) {
  if (!(a > 0.0) || !std::isfinite(a))
    throw std::domain_error("inv_reg_lower_gamma: a must be positive and finite");
  if (!(p > 0.0) || !(p < 1.0))
    throw std::domain_error("inv_reg_lower_gamma: p must lie in (0, 1)");

  // initial guess from the small-z asymptote P ~ z^a / Gamma(a+1), capped near a
  double z = std::exp((std::log(p) + lgamma_pos(a + 1.0)) / a);
  if (!(z > 0.0) || !std::isfinite(z) || z > a) z = a;

  double lo = 0.0, hi = std::numeric_limits<double>::infinity();
  // establish a finite upper bracket
  double probe = std::max(z, a) * 2.0 + 1.0;
  for (int i = 0; i < 400 && reg_lower_gamma(a, probe) < p; ++i) probe *= 2.0;
  hi = probe;

  // below the median, iterate on log P so small targets keep their relative
  // accuracy; above it plain P is well conditioned
  const bool log_space = p < 0.5;
  const double target = log_space ? std::log(p) : p;
  const double lga = lgamma_pos(a);
  for (int iter = 0; iter < 200; ++iter) {
    const double fp = log_space ? log_reg_lower_gamma(a, z) : reg_lower_gamma(a, z);
    const double f = fp - target;
    if (f > 0.0)
      hi = z;
    else
      lo = z;
    const double f_tol = log_space ? 1e-13 : 1e-14 * std::max(1.0 - p, 1e-3);
    if (std::abs(f) < f_tol || (hi - lo) < 1e-15 * std::max(z, 1e-300)) break;
    const double logpdf = (a - 1.0) * std::log(z) - z - lga;
    // d(log P)/dz = pdf / P; dP/dz = pdf
    const double step =
        log_space ? f * std::exp(fp - logpdf) : f * std::exp(-logpdf);
    double znew = z - step;
    if (!(znew > lo) || !(znew < hi) || !std::isfinite(znew))
      znew = std::isfinite(hi) ? 0.5 * (lo + hi) : 2.0 * z;  // bisection fallback
    z = znew;
  }
  return z;
}

}  // namespace stochorder

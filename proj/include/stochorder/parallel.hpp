#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "stochorder/dists.hpp"

namespace stochorder {

/// Strictly increasing positive evaluation abscissae.
class EvalGrid {
 public:
  explicit EvalGrid(std::vector<double> points);
  static EvalGrid log_spaced(double lo, double hi, std::size_t n);
  static EvalGrid default_grid();  // 2000 log-spaced points on [1e-3, 20]

  const std::vector<double>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  double operator[](std::size_t i) const { return points_[i]; }
  double front() const { return points_.front(); }
  double back() const { return points_.back(); }

 private:
  std::vector<double> points_;
};

enum class CurveKind { cdf, survival, hazard, density };

std::string to_string(CurveKind kind);

/// Tabulated system function on a grid; serializes to `x,<kind>` CSV rows
/// with 17 significant digits.
struct SystemCurve {
  EvalGrid grid;
  std::vector<double> values;
  CurveKind kind;

  void write_csv(std::ostream& os) const;
};

// --- exact distribution of the maximum of a heterogeneous system ---

double system_log_cdf(const ParallelSystem& s, double x);
double system_cdf(const ParallelSystem& s, double x);
double system_survival(const ParallelSystem& s, double x);
double system_log_survival(const ParallelSystem& s, double x);

/// Hazard of the maximum:
///   r(x) = [prod F_i^(a_i) / (1 - prod F_i^(a_i))] * sum a_i lambda_i rh(lambda_i x).
/// Refuses x < 1e-10; returns +inf once the system survival underflows 1e-300.
double system_hazard(const ParallelSystem& s, double x);

/// P(max >= x + t | max >= x).
double conditional_survival(const ParallelSystem& s, double x, double t);

/// The symmetric function behind the hazard:
///   psi(y) = [prod F(y_i)^(a_i) / (1 - prod F(y_i)^(a_i))] * sum a_i y_i rh(y_i),
/// so that system_hazard(s, x) = psi(lambda * x) / x.
double psi_function(const BaselineFamily& fam, std::span<const double> y,
                    std::span<const double> shape_exps);

SystemCurve tabulate(const ParallelSystem& s, const EvalGrid& grid, CurveKind kind,
                     int threads = 1);

}  // namespace stochorder

#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace multistable {

/// A stability index x -> alpha(x) with declared bounds a <= alpha(x) <= b,
/// 0 < a <= b <= 2.
///
/// Construction probes 4096 points over the family's natural window and
/// rejects functions that leave [a, b]; every evaluation re-checks the bound
/// and throws DomainError on violation. Instances are immutable and cheap to
/// copy.
class IndexFunction {
 public:
  enum class Family { constant, affine_clamped, sinusoidal, piecewise_constant, tabulated, dyadic };

  static IndexFunction constant(double value);
  static IndexFunction constant(double value, double a, double b);
  /// clamp(intercept + slope * x, a, b)
  static IndexFunction affine_clamped(double intercept, double slope, double a, double b);
  /// mid + amp * sin(2 pi x / period + phase)
  static IndexFunction sinusoidal(double mid, double amp, double period, double a, double b, double phase = 0.0);
  /// values[0] on (-inf, edges[0]), values[k] on [edges[k-1], edges[k]), values.back() on [edges.back(), inf).
  static IndexFunction piecewise_constant(std::vector<double> edges, std::vector<double> values, double a, double b);
  /// Linear interpolation through (xs, alphas), constant beyond the table.
  static IndexFunction tabulated(std::vector<double> xs, std::vector<double> alphas, double a, double b);

  /// Left-endpoint dyadic discretization alpha_n(x) = alpha(r 2^-n) on [r 2^-n, (r+1) 2^-n).
  IndexFunction dyadic(int level) const;

  double operator()(double x) const;
  double lower() const noexcept { return a_; }
  double upper() const noexcept { return b_; }
  Family family() const noexcept { return family_; }
  bool is_constant() const noexcept { return family_ == Family::constant; }
  const std::vector<double>& params() const noexcept { return params_; }
  const std::vector<double>& xs() const noexcept { return xs_; }
  const std::vector<double>& ys() const noexcept { return ys_; }
  int dyadic_level() const noexcept { return level_; }
  const IndexFunction* dyadic_base() const noexcept { return base_.get(); }

  /// Jump or kink locations inside (lo, hi); empty for smooth families.
  /// Dyadic grids with more than `max_points` edges in range return nothing.
  std::vector<double> breakpoints(double lo, double hi, std::size_t max_points = 1u << 16) const;

  std::string describe() const;

 private:
  IndexFunction(Family family, double a, double b);
  double raw(double x) const;
  void check_probe_grid(double lo, double hi) const;

  Family family_;
  double a_;
  double b_;
  std::vector<double> params_;
  std::vector<double> xs_;
  std::vector<double> ys_;
  int level_ = 0;
  std::shared_ptr<const IndexFunction> base_;
};

}  // namespace multistable

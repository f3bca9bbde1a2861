#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "multistable/quadrature.hpp"

namespace multistable {

/// Support of a RealFunction: f vanishes outside [lo, hi]. An infinite end
/// must carry a decay tail describing |f| there.
struct Support {
  double lo = 0.0;
  double hi = 0.0;
  Tail left;
  Tail right;

  bool bounded() const;
  bool empty() const { return !(lo < hi); }
};

/// A real function of one variable together with the metadata the quadrature
/// engine needs: support, jump/kink locations and power-law singularities.
/// Value type; the evaluator is shared and must be pure.
class RealFunction {
 public:
  using Evaluator = std::function<double(double)>;

  RealFunction();
  RealFunction(Evaluator f, Support support, std::vector<double> breakpoints = {},
               std::vector<Singularity> singularities = {}, std::string label = "custom");

  static RealFunction zero();
  /// scale * 1_[lo, hi)
  static RealFunction indicator(double lo, double hi, double scale = 1.0);
  /// values[k] on [edges[k], edges[k+1]), zero elsewhere.
  static RealFunction step(std::vector<double> edges, std::vector<double> values);
  /// scale * |x - center|^exponent on [lo, hi]; singular at center when exponent < 0.
  static RealFunction power(double lo, double hi, double center, double exponent, double scale = 1.0);
  /// scale * exp(-rate (x - start)) on [start, inf).
  static RealFunction exponential(double rate, double start = 0.0, double scale = 1.0);

  /// Value at x; zero outside the support.
  double operator()(double x) const;

  const Support& support() const noexcept { return support_; }
  const std::vector<double>& breakpoints() const noexcept { return breakpoints_; }
  const std::vector<Singularity>& singularities() const noexcept { return singularities_; }
  const std::string& label() const noexcept { return label_; }
  const Evaluator& evaluator() const noexcept { return *f_; }

  RealFunction scaled(double c) const;
  /// z -> f(u + r z), r > 0.
  RealFunction pullback(double u, double r) const;
  /// x -> weight(x) f(x) with 0 <= weight <= weight_bound on the support.
  RealFunction weighted(Evaluator weight, double weight_bound) const;

  /// Same function with additional breakpoints declared.
  RealFunction with_breakpoints(const std::vector<double>& extra) const;

  static RealFunction linear_combination(std::span<const RealFunction> fs, std::span<const double> coefficients);

 private:
  std::shared_ptr<const Evaluator> f_;
  Support support_;
  std::vector<double> breakpoints_;
  std::vector<Singularity> singularities_;
  std::string label_;
};

}  // namespace multistable

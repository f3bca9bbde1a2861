#pragma once

#include <functional>
#include <string>
#include <vector>

#include "multistable/index_function.hpp"
#include "multistable/quadrature.hpp"
#include "multistable/real_function.hpp"

namespace multistable {

/// Integral of |g(x)|^p(x) * weight(x) for an exponent field p with values in
/// [p_lo, p_hi]. Singular exponents of g are converted to integrand exponents
/// with p evaluated at the singular point; tails use p_lo (the slowest decay)
/// and `weight_bound` bounds the weight. This is the workhorse behind every
/// characteristic-function exponent in the library.
struct PowerIntegrand {
  std::function<double(double)> exponent;
  double exponent_lo = 1.0;
  double exponent_hi = 1.0;
  std::function<double(double)> weight;  // empty means 1
  double weight_bound = 1.0;
  std::vector<double> extra_breakpoints;
};

QuadratureResult integrate_power_field(const RealFunction& g, const PowerIntegrand& p, const QuadratureSpec& quad);

/// \int |f(x)|^{alpha(x)} dx
double integrate_alpha_power(const RealFunction& f, const IndexFunction& alpha, const QuadratureSpec& quad = {});

/// \int |f(x)|^{a,b} dx with |y|^{a,b} = max(|y|^a, |y|^b).
double integrate_ab_power(const RealFunction& f, double a, double b, const QuadratureSpec& quad = {});

/// (\int |f|^p)^{1/p}, p > 0.
double norm_p(const RealFunction& f, double p, const QuadratureSpec& quad = {});

/// rho(lambda) = \int |f(x)/lambda|^{alpha(x)} dx
double modular(const RealFunction& f, const IndexFunction& alpha, double lambda, const QuadratureSpec& quad = {});

/// The variable-exponent (Luxemburg) norm: the unique lambda > 0 with
/// rho(lambda) = 1. rho is continuous and strictly decreasing for nonzero f,
/// so the root is bracketed by doubling/halving from lambda = 1 and refined
/// by bisection to relative width 1e-10.
///
/// Returns 0 for f = 0 a.e. (the defining set is empty there). Throws
/// NumericError when no bracket is found within 2^(+-64).
double luxemburg_norm(const RealFunction& f, const IndexFunction& alpha, const QuadratureSpec& quad = {});

struct LogContinuityReport {
  std::vector<double> r_values;
  std::vector<double> moduli;  // m(r) = sup_x |alpha(x+r) - alpha(x)| |log r|
  bool plausibly_satisfied = false;
  std::string note;
};

/// Numeric diagnostic (not a proof) for |alpha(x+r) - alpha(x)| = o(1/|log r|)
/// on [lo, hi]: m(r) is evaluated on a 4096-point probe grid for each r. The
/// condition is flagged plausible when every m(r) vanishes, or when m(r) is
/// non-increasing along the given sequence and its last value is at most half
/// of its first.
LogContinuityReport log_continuity_diagnostic(const IndexFunction& alpha, double lo, double hi,
                                              const std::vector<double>& r_values);

}  // namespace multistable

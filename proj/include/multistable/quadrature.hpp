#pragma once

#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

namespace multistable {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Controls for the composite Gauss-Legendre engine.
struct QuadratureSpec {
  int base_cells = 32;
  /// Cells next to a declared singularity have width proportional to
  /// distance^grading_exponent (1 gives a geometric mesh).
  double grading_exponent = 1.0;
  double abs_tol = 1e-9;
  double rel_tol = 1e-9;
  /// Exponential tails are cut where the remaining envelope mass drops
  /// below this value.
  double truncation_epsilon = 1e-12;
  std::size_t max_cells = 400000;

  void validate() const;
};

enum class TailKind { none, exponential, power };

/// Envelope of a function beyond `start` on one side of its support.
///   exponential: |f(x)| <= coefficient * exp(-rate * |x - start|)
///   power:       |f(x)| <= coefficient * |x|^(-exponent)
struct Tail {
  TailKind kind = TailKind::none;
  double start = 0.0;
  double rate = 0.0;
  double exponent = 0.0;
  double coefficient = 1.0;

  static Tail exponential(double start, double rate, double coefficient = 1.0) {
    return {TailKind::exponential, start, rate, 0.0, coefficient};
  }
  static Tail power(double start, double exponent, double coefficient = 1.0) {
    return {TailKind::power, start, 0.0, exponent, coefficient};
  }
};

/// A point where a function (or a derivative) blows up like |x - point|^exponent.
struct Singularity {
  double point = 0.0;
  double exponent = 0.0;
};

/// Layout of a nonnegative integrand: its support, interior kinks and
/// singularities, and the envelopes of infinite tails. Singular exponents here
/// refer to the integrand itself and must exceed -1.
struct IntegrandInfo {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<double> breakpoints;
  std::vector<Singularity> singularities;
  Tail left;
  Tail right;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t cells = 0;
  /// Upper bound on the mass discarded by tail truncation.
  double truncated_mass = 0.0;
};

/// Globally adaptive composite 16-point Gauss-Legendre quadrature. The mesh is
/// aligned to every declared breakpoint, pre-graded toward singularities, and
/// refined by bisecting the cell with the largest local error estimate until
/// the total estimate is below max(abs_tol, rel_tol * |value|). Power tails are
/// integrated after the substitution x = s + L (1/u - 1); exponential tails are
/// truncated. Throws NumericError when max_cells is reached.
QuadratureResult integrate(const std::function<double(double)>& integrand,
                           const IntegrandInfo& info, const QuadratureSpec& spec);

/// 16-point Gauss-Legendre nodes on [-1, 1] (ascending) and weights.
const std::vector<double>& gauss_legendre_nodes();
const std::vector<double>& gauss_legendre_weights();

/// Pairwise (tree) summation; the result depends only on the order of `terms`.
double pairwise_sum(const double* terms, std::size_t n);

}  // namespace multistable

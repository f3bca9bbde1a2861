#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "multistable/exact_sum.hpp"
#include "multistable/index_function.hpp"
#include "multistable/quadrature.hpp"
#include "multistable/real_function.hpp"
#include "multistable/rng.hpp"

namespace multistable {

/// One joint characteristic-function evaluation: functions f_1..f_d,
/// arguments theta_1..theta_d and the index function.
struct CfSpec {
  std::vector<RealFunction> functions;
  std::vector<double> thetas;
  IndexFunction alpha = IndexFunction::constant(2.0);

  void validate() const;
  /// sum_j theta_j f_j
  RealFunction combined() const;
};

/// \int |sum_j theta_j f_j(x)|^{alpha(x)} dx
double cf_exponent(const CfSpec& spec, const QuadratureSpec& quad = {});

/// exp(-cf_exponent): the joint characteristic function of the multistable
/// integrals (int f_1 dM, ..., int f_d dM) at (theta_1, ..., theta_d).
double cf_joint(const CfSpec& spec, const QuadratureSpec& quad = {});

/// Characteristic function of (r^{-1/alpha(u)} int f_j d(T_{u,r}^# M))_j,
/// evaluated after the substitution x = u + r z:
///   exp(-\int |sum_j theta_j f_j(z)|^{alpha(u + r z)} r^{1 - alpha(u + r z)/alpha(u)} dz).
double scaled_cf(const CfSpec& spec, double u, double r, const QuadratureSpec& quad = {});

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Finite union of half-open intervals [lo, hi), kept sorted, disjoint and
/// with touching pieces merged.
class IntervalSet {
 public:
  IntervalSet() = default;
  explicit IntervalSet(std::vector<Interval> pieces);

  const std::vector<Interval>& pieces() const noexcept { return pieces_; }
  bool empty() const noexcept { return pieces_.empty(); }
  double length() const;
  double lower() const;
  double upper() const;
  /// Lebesgue measure of the intersection.
  double overlap(const IntervalSet& other) const;
  IntervalSet unite(const IntervalSet& other) const;
  RealFunction indicator() const;

 private:
  std::vector<Interval> pieces_;
};

/// One realization of the dyadic approximation at resolution 2^-level over
/// the grid-aligned window [first_cell 2^-level, (first_cell + size) 2^-level).
/// draws[k] realizes M_{n,r} on cell r = first_cell + k with index
/// alpha(r 2^-level) (left endpoint) and scale (2^-level)^{1/alpha}.
struct MeasureIncrements {
  int level = 0;
  std::int64_t first_cell = 0;
  std::vector<double> draws;
  std::vector<double> alpha_used;
  RngStream stream;

  double cell_width() const;
  double x_lo() const;
  double x_hi() const;
  std::size_t size() const noexcept { return draws.size(); }
  double x_left(std::size_t k) const;
};

struct SimulationLimits {
  std::size_t max_cells = std::size_t{1} << 24;
};

/// Draws every cell increment covering [lo, hi) (expanded outward to the
/// dyadic grid). Cell r uses derive_stream(stream, level, r), so a cell's draw
/// does not depend on the window it was simulated in. Throws ResourceError
/// when the cell count exceeds limits.max_cells.
MeasureIncrements simulate_increments(const IndexFunction& alpha, int level, double lo, double hi,
                                      const RngStream& stream, const SimulationLimits& limits = {});

/// Per-cell weights of f on the grid of `inc`: cells [first, first + weights.size())
/// relative to inc.first_cell. The weights depend on f, the level, the window
/// and alpha_used only, so they can be reused across realizations on the same
/// grid.
struct CellWeights {
  std::size_t first = 0;
  std::vector<double> weights;
};

CellWeights cell_weights(const RealFunction& f, const MeasureIncrements& inc, const QuadratureSpec& quad = {});
ExactSum apply_weights(const CellWeights& w, const MeasureIncrements& inc);

/// Exact value of sum_r w_r draws[r], where w_r = f(midpoint of cell r) except
/// on cells containing a breakpoint of f in their interior or a declared
/// singularity anywhere in the closed cell; those use the cell average of f.
ExactSum integrate_sample_exact(const RealFunction& f, const MeasureIncrements& inc, const QuadratureSpec& quad = {});

/// Discretized multistable integral int f dM: the correctly rounded value of
/// integrate_sample_exact.
double integrate_sample(const RealFunction& f, const MeasureIncrements& inc, const QuadratureSpec& quad = {});

/// Mass of |f|^{a,b} outside the increments window (0 when covered).
double uncovered_mass(const RealFunction& f, const MeasureIncrements& inc, double a, double b,
                      const QuadratureSpec& quad = {});

/// M(A) with boundary cells weighted by their exact overlap fraction. The
/// overlap of [lo, hi) with a cell is computed without rounding, so
/// measure_exact(A u B) == measure_exact(A) + measure_exact(B) holds exactly
/// for disjoint A, B.
ExactSum measure_exact(const IntervalSet& set, const MeasureIncrements& inc);
double measure_of_set(const IntervalSet& set, const MeasureIncrements& inc);

}  // namespace multistable

#include "multistable/multistable.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "multistable/error.hpp"
#include "multistable/function_spaces.hpp"
#include "multistable/stable.hpp"

namespace multistable {

void CfSpec::validate() const {
  if (functions.empty()) throw ArgumentError("CfSpec needs at least one function");
  if (functions.size() != thetas.size()) throw ArgumentError("CfSpec needs one theta per function");
  for (double t : thetas) {
    if (!std::isfinite(t)) throw ArgumentError("CfSpec thetas must be finite");
  }
}

RealFunction CfSpec::combined() const {
  validate();
  return RealFunction::linear_combination(functions, thetas);
}

double cf_exponent(const CfSpec& spec, const QuadratureSpec& quad) {
  const RealFunction g = spec.combined();
  if (g.support().empty()) return 0.0;
  return integrate_alpha_power(g, spec.alpha, quad);
}

double cf_joint(const CfSpec& spec, const QuadratureSpec& quad) { return std::exp(-cf_exponent(spec, quad)); }

double scaled_cf(const CfSpec& spec, double u, double r, const QuadratureSpec& quad) {
  if (!(r > 0.0)) throw ArgumentError("scaled_cf needs r > 0");
  const RealFunction g = spec.combined();
  if (g.support().empty()) return 1.0;
  const IndexFunction& alpha = spec.alpha;
  const double au = alpha(u);
  PowerIntegrand p;
  p.exponent = [&alpha, u, r](double z) { return alpha(u + r * z); };
  p.exponent_lo = alpha.lower();
  p.exponent_hi = alpha.upper();
  if (!alpha.is_constant()) {
    p.weight = [&alpha, u, r, au](double z) { return std::pow(r, 1.0 - alpha(u + r * z) / au); };
    p.weight_bound = std::max(std::pow(r, 1.0 - alpha.lower() / au), std::pow(r, 1.0 - alpha.upper() / au));
    const Support& s = g.support();
    const double lo = std::isfinite(s.lo) ? u + r * s.lo : -kInf;
    const double hi = std::isfinite(s.hi) ? u + r * s.hi : kInf;
    if (std::isfinite(lo) && std::isfinite(hi)) {
      for (double x : alpha.breakpoints(lo, hi)) p.extra_breakpoints.push_back((x - u) / r);
    }
  }
  return std::exp(-integrate_power_field(g, p, quad).value);
}

IntervalSet::IntervalSet(std::vector<Interval> pieces) {
  for (const auto& iv : pieces) {
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi)) throw ArgumentError("interval sets must be bounded");
    if (iv.hi < iv.lo) throw ArgumentError("interval needs lo <= hi");
  }
  pieces.erase(std::remove_if(pieces.begin(), pieces.end(), [](const Interval& iv) { return !(iv.lo < iv.hi); }),
               pieces.end());
  std::sort(pieces.begin(), pieces.end(), [](const Interval& x, const Interval& y) { return x.lo < y.lo; });
  for (const auto& iv : pieces) {
    if (!pieces_.empty() && iv.lo <= pieces_.back().hi) {
      pieces_.back().hi = std::max(pieces_.back().hi, iv.hi);
    } else {
      pieces_.push_back(iv);
    }
  }
}

double IntervalSet::length() const {
  double s = 0.0;
  for (const auto& iv : pieces_) s += iv.hi - iv.lo;
  return s;
}

double IntervalSet::lower() const { return pieces_.empty() ? 0.0 : pieces_.front().lo; }
double IntervalSet::upper() const { return pieces_.empty() ? 0.0 : pieces_.back().hi; }

double IntervalSet::overlap(const IntervalSet& other) const {
  double s = 0.0;
  for (const auto& x : pieces_) {
    for (const auto& y : other.pieces_) {
      const double lo = std::max(x.lo, y.lo);
      const double hi = std::min(x.hi, y.hi);
      if (hi > lo) s += hi - lo;
    }
  }
  return s;
}

IntervalSet IntervalSet::unite(const IntervalSet& other) const {
  std::vector<Interval> all = pieces_;
  all.insert(all.end(), other.pieces_.begin(), other.pieces_.end());
  return IntervalSet(std::move(all));
}

RealFunction IntervalSet::indicator() const {
  if (pieces_.empty()) return RealFunction::zero();
  std::vector<double> bps;
  for (const auto& iv : pieces_) {
    bps.push_back(iv.lo);
    bps.push_back(iv.hi);
  }
  const auto pieces = pieces_;
  return RealFunction(
      [pieces](double x) {
        for (const auto& iv : pieces) {
          if (x >= iv.lo && x < iv.hi) return 1.0;
        }
        return 0.0;
      },
      Support{pieces_.front().lo, pieces_.back().hi, {}, {}}, bps, {}, "indicator(set)");
}

double MeasureIncrements::cell_width() const { return std::ldexp(1.0, -level); }
double MeasureIncrements::x_lo() const { return std::ldexp(static_cast<double>(first_cell), -level); }
double MeasureIncrements::x_hi() const {
  return std::ldexp(static_cast<double>(first_cell + static_cast<std::int64_t>(draws.size())), -level);
}
double MeasureIncrements::x_left(std::size_t k) const {
  return std::ldexp(static_cast<double>(first_cell + static_cast<std::int64_t>(k)), -level);
}

MeasureIncrements simulate_increments(const IndexFunction& alpha, int level, double lo, double hi,
                                      const RngStream& stream, const SimulationLimits& limits) {
  if (level < 0 || level > 52) throw ArgumentError("simulation level must lie in [0, 52]");
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo <= hi)) {
    throw ArgumentError("simulation window must be bounded with lo <= hi");
  }
  const double first = std::floor(std::ldexp(lo, level));
  double last = std::ceil(std::ldexp(hi, level));
  if (last <= first) last = first + 1.0;
  const double count = last - first;
  if (count > static_cast<double>(limits.max_cells)) {
    std::ostringstream os;
    os << "simulation needs " << count << " cells at level " << level << ", above the cap of " << limits.max_cells;
    throw ResourceError(os.str());
  }
  MeasureIncrements inc;
  inc.level = level;
  inc.first_cell = static_cast<std::int64_t>(first);
  inc.stream = stream;
  const auto n = static_cast<std::size_t>(count);
  inc.draws.resize(n);
  inc.alpha_used.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::int64_t r = inc.first_cell + static_cast<std::int64_t>(k);
    const double a = alpha(std::ldexp(static_cast<double>(r), -level));
    RngStream cell = derive_stream(stream, level, r);
    inc.alpha_used[k] = a;
    inc.draws[k] = std::exp2(-static_cast<double>(level) / a) * sample_stable_unit(a, cell);
  }
  return inc;
}

namespace {

// Index range [k0, k1) of cells meeting [lo, hi].
std::pair<std::size_t, std::size_t> cell_range(const MeasureIncrements& inc, double lo, double hi) {
  const auto n = static_cast<double>(inc.size());
  const double scale = std::ldexp(1.0, inc.level);
  const double base = static_cast<double>(inc.first_cell);
  const double k0 = std::isfinite(lo) ? std::clamp(std::floor(lo * scale - base), 0.0, n) : 0.0;
  const double k1 = std::isfinite(hi) ? std::clamp(std::floor(hi * scale - base) + 1.0, 0.0, n) : n;
  return {static_cast<std::size_t>(k0), static_cast<std::size_t>(std::max(k0, k1))};
}

std::ptrdiff_t cell_of(const MeasureIncrements& inc, double x) {
  return static_cast<std::ptrdiff_t>(std::floor(std::ldexp(x, inc.level) - static_cast<double>(inc.first_cell)));
}

}  // namespace

CellWeights cell_weights(const RealFunction& f, const MeasureIncrements& inc, const QuadratureSpec& quad) {
  CellWeights out;
  const Support& s = f.support();
  if (s.empty() || inc.size() == 0) return out;
  const auto [k0, k1] = cell_range(inc, s.lo, s.hi);
  if (k0 >= k1) return out;
  out.first = k0;
  out.weights.reserve(k1 - k0);

  // Cells needing an average instead of the midpoint value.
  std::vector<std::size_t> special;
  const auto n = static_cast<std::ptrdiff_t>(inc.size());
  for (double b : f.breakpoints()) {
    const auto k = cell_of(inc, b);
    if (k >= 0 && k < n && b > inc.x_left(static_cast<std::size_t>(k))) special.push_back(static_cast<std::size_t>(k));
  }
  for (const auto& sg : f.singularities()) {
    const auto k = cell_of(inc, sg.point);
    if (k >= 0 && k < n) special.push_back(static_cast<std::size_t>(k));
    if (k >= 1 && k <= n && sg.point == inc.x_left(static_cast<std::size_t>(k))) {
      special.push_back(static_cast<std::size_t>(k - 1));
    }
  }
  std::sort(special.begin(), special.end());
  special.erase(std::unique(special.begin(), special.end()), special.end());

  const double width = inc.cell_width();
  const double half = 0.5 * width;
  auto next_special = std::lower_bound(special.begin(), special.end(), k0);
  for (std::size_t k = k0; k < k1; ++k) {
    const double xl = inc.x_left(k);
    double w = 0.0;
    if (next_special != special.end() && *next_special == k) {
      ++next_special;
      const double xr = xl + width;
      IntegrandInfo info;
      info.lo = xl;
      info.hi = xr;
      double worst = 0.0;
      for (double b : f.breakpoints()) {
        if (b > xl && b < xr) info.breakpoints.push_back(b);
      }
      for (const auto& sg : f.singularities()) {
        if (sg.point >= xl && sg.point <= xr) {
          info.singularities.push_back(sg);
          worst = std::min(worst, sg.exponent);
        }
      }
      if (worst > -1.0) {
        w = integrate(f.evaluator(), info, quad).value / width;
      } else {
        // f is not integrable on this cell; match the cell's scale instead:
        // |w|^alpha * width = \int_cell |f|^alpha.
        const double a = inc.alpha_used[k];
        for (auto& sg : info.singularities) sg.exponent *= a;
        const auto& fe = f.evaluator();
        const double mass = integrate([&fe, a](double x) { return std::pow(std::abs(fe(x)), a); }, info, quad).value;
        w = std::copysign(std::pow(mass / width, 1.0 / a), f(xl + half));
      }
    } else {
      w = f(xl + half);
    }
    out.weights.push_back(w);
  }
  return out;
}

ExactSum apply_weights(const CellWeights& w, const MeasureIncrements& inc) {
  ExactSum acc;
  const std::size_t n = std::min(w.weights.size(), inc.size() > w.first ? inc.size() - w.first : 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (w.weights[i] != 0.0) acc.add_product(w.weights[i], inc.draws[w.first + i]);
  }
  return acc;
}

ExactSum integrate_sample_exact(const RealFunction& f, const MeasureIncrements& inc, const QuadratureSpec& quad) {
  return apply_weights(cell_weights(f, inc, quad), inc);
}


double integrate_sample(const RealFunction& f, const MeasureIncrements& inc, const QuadratureSpec& quad) {
  return integrate_sample_exact(f, inc, quad).to_double();
}

double uncovered_mass(const RealFunction& f, const MeasureIncrements& inc, double a, double b,
                      const QuadratureSpec& quad) {
  const Support& s = f.support();
  if (s.empty()) return 0.0;
  double mass = 0.0;
  const double lo = inc.x_lo();
  const double hi = inc.x_hi();
  if (s.lo < lo) {
    const auto f_left = f.weighted([lo](double x) { return x < lo ? 1.0 : 0.0; }, 1.0).with_breakpoints({lo});
    mass += integrate_ab_power(f_left, a, b, quad);
  }
  if (s.hi > hi) {
    const auto f_right = f.weighted([hi](double x) { return x >= hi ? 1.0 : 0.0; }, 1.0).with_breakpoints({hi});
    mass += integrate_ab_power(f_right, a, b, quad);
  }
  return mass;
}

ExactSum measure_exact(const IntervalSet& set, const MeasureIncrements& inc) {
  ExactSum acc;
  const double scale = std::ldexp(1.0, inc.level);
  const double width = inc.cell_width();
  for (const auto& iv : set.pieces()) {
    const auto [k0, k1] = cell_range(inc, iv.lo, iv.hi);
    for (std::size_t k = k0; k < k1; ++k) {
      const double xl = inc.x_left(k);
      const double lo = std::max(iv.lo, xl);
      const double hi = std::min(iv.hi, xl + width);
      if (!(hi > lo)) continue;
      if (lo == xl && hi == xl + width) {
        acc.add(inc.draws[k]);
        continue;
      }
      // Exact overlap length hi - lo = s + e (two-sum), then scaled by 2^level.
      const double s = hi - lo;
      const double bb = s - hi;
      const double e = (hi - (s - bb)) + (-lo - bb);
      acc.add_product(inc.draws[k], s * scale);
      if (e != 0.0) acc.add_product(inc.draws[k], e * scale);
    }
  }
  return acc;
}

double measure_of_set(const IntervalSet& set, const MeasureIncrements& inc) {
  return measure_exact(set, inc).to_double();
}

}  // namespace multistable

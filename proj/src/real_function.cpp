#include "multistable/real_function.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "multistable/error.hpp"

namespace multistable {

namespace {

void sort_unique(std::vector<double>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

void merge_singularities(std::vector<Singularity>& v) {
  std::sort(v.begin(), v.end(), [](const Singularity& x, const Singularity& y) {
    return x.point != y.point ? x.point < y.point : x.exponent < y.exponent;
  });
  // Keep the most singular exponent at each point.
  v.erase(std::unique(v.begin(), v.end(),
                      [](const Singularity& x, const Singularity& y) { return x.point == y.point; }),
          v.end());
}

Tail pullback_tail(const Tail& t, double u, double r, bool right) {
  Tail out = t;
  switch (t.kind) {
    case TailKind::none:
      break;
    case TailKind::exponential:
      out.start = (t.start - u) / r;
      out.rate = t.rate * r;
      break;
    case TailKind::power: {
      const double reach = std::max(std::abs((t.start - u) / r), 2.0 * std::abs(u) / r);
      out.start = right ? std::max((t.start - u) / r, reach) : std::min((t.start - u) / r, -reach);
      out.coefficient = t.coefficient * std::pow(2.0 / r, t.exponent);
      break;
    }
  }
  return out;
}

// Envelope of sum_j |c_j| |f_j| on one side. `hull` is the far end of the
// combined support on that side, `reach` the innermost point from which
// every contributing function is either zero or bounded by its tail.
Tail combine_tails(std::span<const RealFunction> fs, std::span<const double> cs, bool right) {
  bool any_power = false;
  bool any_exp = false;
  double start = right ? -kInf : kInf;
  double min_rate = kInf;
  double min_exponent = kInf;
  for (std::size_t j = 0; j < fs.size(); ++j) {
    if (cs[j] == 0.0) continue;
    const Support& s = fs[j].support();
    if (s.empty()) continue;
    const Tail& t = right ? s.right : s.left;
    const bool infinite = right ? !std::isfinite(s.hi) : !std::isfinite(s.lo);
    if (!infinite) {
      start = right ? std::max(start, s.hi) : std::min(start, s.lo);
      continue;
    }
    start = right ? std::max(start, t.start) : std::min(start, t.start);
    if (t.kind == TailKind::power) {
      any_power = true;
      min_exponent = std::min(min_exponent, t.exponent);
    } else if (t.kind == TailKind::exponential) {
      any_exp = true;
      min_rate = std::min(min_rate, t.rate);
    }
  }
  if (!any_power && !any_exp) return Tail{};
  if (any_power) {
    double coeff = 0.0;
    for (std::size_t j = 0; j < fs.size(); ++j) {
      if (cs[j] == 0.0) continue;
      const Tail& t = right ? fs[j].support().right : fs[j].support().left;
      if (t.kind != TailKind::none) coeff += std::abs(cs[j]) * t.coefficient;
    }
    return Tail::power(start, min_exponent, coeff);
  }
  double coeff = 0.0;
  for (std::size_t j = 0; j < fs.size(); ++j) {
    if (cs[j] == 0.0) continue;
    const Tail& t = right ? fs[j].support().right : fs[j].support().left;
    if (t.kind != TailKind::exponential) continue;
    const double gap = std::abs(start - t.start);
    coeff += std::abs(cs[j]) * t.coefficient * std::exp(-t.rate * gap);
  }
  return Tail::exponential(start, min_rate, coeff);
}

}  // namespace

bool Support::bounded() const { return std::isfinite(lo) && std::isfinite(hi); }

RealFunction::RealFunction() : RealFunction(zero()) {}

RealFunction::RealFunction(Evaluator f, Support support, std::vector<double> breakpoints,
                           std::vector<Singularity> singularities, std::string label)
    : f_(std::make_shared<const Evaluator>(std::move(f))),
      support_(support),
      breakpoints_(std::move(breakpoints)),
      singularities_(std::move(singularities)),
      label_(std::move(label)) {
  if (support_.lo > support_.hi) throw ArgumentError("support lower end exceeds upper end");
  if (!std::isfinite(support_.lo) && support_.left.kind == TailKind::none) {
    throw ArgumentError("unbounded support on the left requires a decay tail");
  }
  if (!std::isfinite(support_.hi) && support_.right.kind == TailKind::none) {
    throw ArgumentError("unbounded support on the right requires a decay tail");
  }
  sort_unique(breakpoints_);
  merge_singularities(singularities_);
}

RealFunction RealFunction::zero() {
  return RealFunction([](double) { return 0.0; }, Support{0.0, 0.0, {}, {}}, {}, {}, "zero");
}

RealFunction RealFunction::indicator(double lo, double hi, double scale) {
  if (!(lo <= hi)) throw ArgumentError("indicator needs lo <= hi");
  std::ostringstream os;
  os << scale << "*1[" << lo << "," << hi << ")";
  return RealFunction([lo, hi, scale](double x) { return (x >= lo && x < hi) ? scale : 0.0; },
                      Support{lo, hi, {}, {}}, {lo, hi}, {}, os.str());
}

RealFunction RealFunction::step(std::vector<double> edges, std::vector<double> values) {
  if (edges.size() != values.size() + 1 || values.empty()) {
    throw ArgumentError("step function needs exactly one more edge than values");
  }
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (!(edges[i] > edges[i - 1])) throw ArgumentError("step edges must be strictly increasing");
  }
  const Support s{edges.front(), edges.back(), {}, {}};
  auto e = edges;
  auto v = values;
  return RealFunction(
      [e, v](double x) {
        if (x < e.front() || x >= e.back()) return 0.0;
        const auto it = std::upper_bound(e.begin(), e.end(), x);
        return v[static_cast<std::size_t>(it - e.begin()) - 1];
      },
      s, edges, {}, "step");
}

RealFunction RealFunction::power(double lo, double hi, double center, double exponent, double scale) {
  if (!(lo <= hi)) throw ArgumentError("power function needs lo <= hi");
  std::vector<Singularity> sing;
  std::vector<double> bps{lo, hi};
  if (center >= lo && center <= hi) {
    bps.push_back(center);
    if (exponent < 0.0) sing.push_back({center, exponent});
  }
  std::ostringstream os;
  os << scale << "*|x-" << center << "|^" << exponent << " on [" << lo << "," << hi << "]";
  return RealFunction(
      [lo, hi, center, exponent, scale](double x) {
        if (x < lo || x > hi) return 0.0;
        const double d = std::abs(x - center);
        if (d == 0.0) return exponent < 0.0 ? 0.0 : (exponent == 0.0 ? scale : 0.0);
        return scale * std::pow(d, exponent);
      },
      Support{lo, hi, {}, {}}, bps, sing, os.str());
}

RealFunction RealFunction::exponential(double rate, double start, double scale) {
  if (!(rate > 0.0)) throw ArgumentError("exponential function needs rate > 0");
  std::ostringstream os;
  os << scale << "*exp(-" << rate << "(x-" << start << ")) on [" << start << ",inf)";
  return RealFunction([rate, start, scale](double x) { return x < start ? 0.0 : scale * std::exp(-rate * (x - start)); },
                      Support{start, kInf, {}, Tail::exponential(start, rate, std::abs(scale))}, {start}, {},
                      os.str());
}

double RealFunction::operator()(double x) const {
  if (support_.empty() || x < support_.lo || x > support_.hi) return 0.0;
  return (*f_)(x);
}

RealFunction RealFunction::scaled(double c) const {
  if (c == 1.0) return *this;
  const auto f = f_;
  Support s = support_;
  s.left.coefficient *= std::abs(c);
  s.right.coefficient *= std::abs(c);
  return RealFunction([f, c](double x) { return c * (*f)(x); }, s, breakpoints_, singularities_,
                      std::to_string(c) + "*(" + label_ + ")");
}

RealFunction RealFunction::pullback(double u, double r) const {
  if (!(r > 0.0)) throw ArgumentError("pullback scale must be positive");
  const auto f = f_;
  Support s;
  s.lo = (support_.lo - u) / r;
  s.hi = (support_.hi - u) / r;
  s.left = pullback_tail(support_.left, u, r, false);
  s.right = pullback_tail(support_.right, u, r, true);
  std::vector<double> bps;
  for (double b : breakpoints_) bps.push_back((b - u) / r);
  std::vector<Singularity> sing;
  for (const auto& sg : singularities_) sing.push_back({(sg.point - u) / r, sg.exponent});
  const Support orig = support_;
  return RealFunction(
      [f, u, r, orig](double z) {
        const double x = u + r * z;
        if (x < orig.lo || x > orig.hi) return 0.0;
        return (*f)(x);
      },
      s, std::move(bps), std::move(sing), "pullback(" + label_ + ")");
}

RealFunction RealFunction::weighted(Evaluator weight, double weight_bound) const {
  const auto f = f_;
  Support s = support_;
  s.left.coefficient *= weight_bound;
  s.right.coefficient *= weight_bound;
  auto w = std::make_shared<const Evaluator>(std::move(weight));
  return RealFunction(
      [f, w](double x) {
        const double v = (*f)(x);
        return v == 0.0 ? 0.0 : (*w)(x) * v;
      },
      s, breakpoints_, singularities_, "weighted(" + label_ + ")");
}

RealFunction RealFunction::with_breakpoints(const std::vector<double>& extra) const {
  RealFunction out = *this;
  for (double b : extra) {
    if (std::isfinite(b)) out.breakpoints_.push_back(b);
  }
  sort_unique(out.breakpoints_);
  return out;
}

RealFunction RealFunction::linear_combination(std::span<const RealFunction> fs, std::span<const double> cs) {
  if (fs.size() != cs.size()) throw ArgumentError("linear combination needs one coefficient per function");
  std::vector<RealFunction> terms;
  std::vector<double> coeffs;
  double lo = kInf;
  double hi = -kInf;
  std::vector<double> bps;
  std::vector<Singularity> sing;
  std::string label;
  for (std::size_t j = 0; j < fs.size(); ++j) {
    if (cs[j] == 0.0 || fs[j].support().empty()) continue;
    terms.push_back(fs[j]);
    coeffs.push_back(cs[j]);
    lo = std::min(lo, fs[j].support().lo);
    hi = std::max(hi, fs[j].support().hi);
    bps.insert(bps.end(), fs[j].breakpoints().begin(), fs[j].breakpoints().end());
    bps.push_back(fs[j].support().lo);
    bps.push_back(fs[j].support().hi);
    sing.insert(sing.end(), fs[j].singularities().begin(), fs[j].singularities().end());
    if (!label.empty()) label += " + ";
    label += std::to_string(cs[j]) + "*(" + fs[j].label() + ")";
  }
  if (terms.empty()) return zero();
  bps.erase(std::remove_if(bps.begin(), bps.end(), [](double b) { return !std::isfinite(b); }), bps.end());
  Support s{lo, hi, combine_tails(terms, coeffs, false), combine_tails(terms, coeffs, true)};
  if (terms.size() == 1 && coeffs[0] == 1.0) return terms[0];
  return RealFunction(
      [terms, coeffs](double x) {
        double acc = 0.0;
        for (std::size_t j = 0; j < terms.size(); ++j) acc += coeffs[j] * terms[j](x);
        return acc;
      },
      s, std::move(bps), std::move(sing), label);
}

}  // namespace multistable

#include "multistable/index_function.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "multistable/error.hpp"

namespace multistable {

namespace {

constexpr int kProbePoints = 4096;
constexpr double kBoundSlack = 1e-12;
const double kTwoPi = 2.0 * std::acos(-1.0);

void check_bounds(double a, double b) {
  if (!(a > 0.0) || !(b <= 2.0) || !(a <= b)) {
    std::ostringstream os;
    os << "index bounds must satisfy 0 < a <= b <= 2 (got a=" << a << ", b=" << b << ")";
    throw ArgumentError(os.str());
  }
}

}  // namespace

IndexFunction::IndexFunction(Family family, double a, double b) : family_(family), a_(a), b_(b) {
  check_bounds(a, b);
}

IndexFunction IndexFunction::constant(double value) { return constant(value, value, value); }

IndexFunction IndexFunction::constant(double value, double a, double b) {
  IndexFunction f(Family::constant, a, b);
  f.params_ = {value};
  if (value < a - kBoundSlack || value > b + kBoundSlack) {
    throw ArgumentError("constant index " + std::to_string(value) + " lies outside [a, b]");
  }
  return f;
}

IndexFunction IndexFunction::affine_clamped(double intercept, double slope, double a, double b) {
  IndexFunction f(Family::affine_clamped, a, b);
  f.params_ = {intercept, slope};
  return f;
}

IndexFunction IndexFunction::sinusoidal(double mid, double amp, double period, double a, double b, double phase) {
  if (!(period > 0.0)) throw ArgumentError("sinusoidal index needs period > 0");
  IndexFunction f(Family::sinusoidal, a, b);
  f.params_ = {mid, amp, period, phase};
  f.check_probe_grid(0.0, period);
  return f;
}

IndexFunction IndexFunction::piecewise_constant(std::vector<double> edges, std::vector<double> values, double a,
                                                double b) {
  if (values.size() != edges.size() + 1) {
    throw ArgumentError("piecewise-constant index needs exactly one more value than edges");
  }
  if (!std::is_sorted(edges.begin(), edges.end()) ||
      std::adjacent_find(edges.begin(), edges.end()) != edges.end()) {
    throw ArgumentError("piecewise-constant edges must be strictly increasing");
  }
  IndexFunction f(Family::piecewise_constant, a, b);
  f.xs_ = std::move(edges);
  f.ys_ = std::move(values);
  for (double v : f.ys_) {
    if (v < a - kBoundSlack || v > b + kBoundSlack) {
      throw ArgumentError("piecewise-constant value " + std::to_string(v) + " lies outside [a, b]");
    }
  }
  return f;
}

IndexFunction IndexFunction::tabulated(std::vector<double> xs, std::vector<double> alphas, double a, double b) {
  if (xs.size() != alphas.size() || xs.size() < 2) {
    throw ArgumentError("tabulated index needs matching xs/alphas with at least two entries");
  }
  for (std::size_t i = 1; i < xs.size(); ++i) {
    if (!(xs[i] > xs[i - 1])) throw ArgumentError("tabulated xs must be strictly increasing");
  }
  IndexFunction f(Family::tabulated, a, b);
  f.xs_ = std::move(xs);
  f.ys_ = std::move(alphas);
  const double span = f.xs_.back() - f.xs_.front();
  f.check_probe_grid(f.xs_.front() - 0.01 * span, f.xs_.back() + 0.01 * span);
  for (double v : f.ys_) {
    if (v < a - kBoundSlack || v > b + kBoundSlack) {
      throw ArgumentError("tabulated value " + std::to_string(v) + " lies outside [a, b]");
    }
  }
  return f;
}

IndexFunction IndexFunction::dyadic(int level) const {
  if (level < 0 || level > 60) throw ArgumentError("dyadic level must lie in [0, 60]");
  IndexFunction f(Family::dyadic, a_, b_);
  f.level_ = level;
  f.base_ = std::make_shared<const IndexFunction>(*this);
  return f;
}

void IndexFunction::check_probe_grid(double lo, double hi) const {
  for (int i = 0; i < kProbePoints; ++i) {
    const double x = lo + (hi - lo) * i / (kProbePoints - 1);
    const double v = raw(x);
    if (!(v >= a_ - kBoundSlack && v <= b_ + kBoundSlack)) {
      std::ostringstream os;
      os << "index function leaves [" << a_ << ", " << b_ << "]: alpha(" << x << ") = " << v;
      throw ArgumentError(os.str());
    }
  }
}

double IndexFunction::raw(double x) const {
  switch (family_) {
    case Family::constant:
      return params_[0];
    case Family::affine_clamped:
      return std::clamp(params_[0] + params_[1] * x, a_, b_);
    case Family::sinusoidal:
      return params_[0] + params_[1] * std::sin(kTwoPi * x / params_[2] + params_[3]);
    case Family::piecewise_constant: {
      const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
      return ys_[static_cast<std::size_t>(it - xs_.begin())];
    }
    case Family::tabulated: {
      if (x <= xs_.front()) return ys_.front();
      if (x >= xs_.back()) return ys_.back();
      const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
      const std::size_t k = static_cast<std::size_t>(it - xs_.begin());
      const double t = (x - xs_[k - 1]) / (xs_[k] - xs_[k - 1]);
      return ys_[k - 1] + t * (ys_[k] - ys_[k - 1]);
    }
    case Family::dyadic: {
      const double cell = std::ldexp(1.0, -level_);
      return (*base_)(std::floor(x / cell) * cell);
    }
  }
  return 0.0;
}

double IndexFunction::operator()(double x) const {
  const double v = raw(x);
  if (!(v >= a_ - kBoundSlack && v <= b_ + kBoundSlack)) {
    std::ostringstream os;
    os << "alpha(" << x << ") = " << v << " lies outside [" << a_ << ", " << b_ << "]";
    throw DomainError(os.str());
  }
  return v;
}

std::vector<double> IndexFunction::breakpoints(double lo, double hi, std::size_t max_points) const {
  std::vector<double> out;
  if (!(lo < hi)) return out;
  switch (family_) {
    case Family::piecewise_constant:
    case Family::tabulated:
      for (double e : xs_) {
        if (e > lo && e < hi) out.push_back(e);
      }
      break;
    case Family::affine_clamped: {
      const double slope = params_[1];
      if (slope != 0.0) {
        for (double level : {a_, b_}) {
          const double e = (level - params_[0]) / slope;
          if (e > lo && e < hi) out.push_back(e);
        }
        std::sort(out.begin(), out.end());
      }
      break;
    }
    case Family::dyadic: {
      if (!std::isfinite(lo) || !std::isfinite(hi)) break;
      const double cell = std::ldexp(1.0, -level_);
      const double first = std::floor(lo / cell) + 1.0;
      const double last = std::ceil(hi / cell) - 1.0;
      if (last - first + 1.0 > static_cast<double>(max_points)) break;
      for (double r = first; r <= last; r += 1.0) out.push_back(r * cell);
      auto inner = base_->breakpoints(lo, hi, max_points);
      out.insert(out.end(), inner.begin(), inner.end());
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      break;
    }
    default:
      break;
  }
  return out;
}

std::string IndexFunction::describe() const {
  std::ostringstream os;
  switch (family_) {
    case Family::constant:
      os << "const:" << params_[0];
      break;
    case Family::affine_clamped:
      os << "affine:" << params_[0] << "," << params_[1];
      break;
    case Family::sinusoidal:
      os << "sin:mid=" << params_[0] << ",amp=" << params_[1] << ",period=" << params_[2];
      break;
    case Family::piecewise_constant:
      os << "piecewise-constant(" << ys_.size() << " pieces)";
      break;
    case Family::tabulated:
      os << "tabulated(" << xs_.size() << " nodes)";
      break;
    case Family::dyadic:
      os << "dyadic[" << level_ << "](" << base_->describe() << ")";
      break;
  }
  os << " on [" << a_ << ", " << b_ << "]";
  return os.str();
}

}  // namespace multistable

#include "multistable/processes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "multistable/error.hpp"
#include "multistable/function_spaces.hpp"

namespace multistable {

namespace {

constexpr double kBetaZero = 1e-14;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

double positive_power(double y, double beta) { return y > 0.0 ? std::pow(y, beta) : 0.0; }

// (q + d)_+^beta - q_+^beta without cancellation when both bases are positive.
double power_difference(double q, double d, double beta) {
  const double p = q + d;
  if (q > 0.0 && p > 0.0) return std::pow(q, beta) * std::expm1(beta * std::log1p(d / q));
  return positive_power(p, beta) - positive_power(q, beta);
}

// (b+ - b-) 1_[0,t](x), signed by the convention 1_[0,t] = -1_[t,0] for t < 0.
double signed_unit(double t, double x) {
  if (t >= 0.0) return (x >= 0.0 && x < t) ? 1.0 : 0.0;
  return (x >= t && x < 0.0) ? -1.0 : 0.0;
}

RealFunction signed_indicator(double t, double scale) {
  if (t == 0.0 || scale == 0.0) return RealFunction::zero();
  return t > 0.0 ? RealFunction::indicator(0.0, t, scale) : RealFunction::indicator(t, 0.0, -scale);
}

}  // namespace

std::string to_string(KernelKind kind) {
  switch (kind) {
    case KernelKind::weighted_levy:
      return "weighted_levy";
    case KernelKind::reverse_ou:
      return "reverse_ou";
    case KernelKind::lfmm:
      return "lfmm";
    case KernelKind::custom:
      return "custom";
  }
  return "custom";
}

KernelKind kernel_kind_from_string(const std::string& name) {
  if (name == "levy" || name == "weighted_levy") return KernelKind::weighted_levy;
  if (name == "rou" || name == "reverse_ou") return KernelKind::reverse_ou;
  if (name == "lfmm") return KernelKind::lfmm;
  throw ArgumentError("unknown process '" + name + "' (expected levy, rou or lfmm)");
}

ProcessKernel::ProcessKernel(KernelKind kind, KernelParams params, IndexFunction alpha)
    : kind_(kind), params_(std::move(params)), alpha_(std::move(alpha)) {}

ProcessKernel make_kernel(KernelKind kind, const KernelParams& params, const IndexFunction& alpha) {
  const double a = alpha.lower();
  const double b = alpha.upper();
  switch (kind) {
    case KernelKind::weighted_levy:
      if (!(params.weight_bound > 0.0) || !std::isfinite(params.weight_bound)) {
        throw ArgumentError("weighted Levy motion needs a finite positive weight bound");
      }
      break;
    case KernelKind::reverse_ou:
      if (!(params.lambda > 0.0) || !std::isfinite(params.lambda)) {
        throw ArgumentError("reverse Ornstein-Uhlenbeck motion needs lambda > 0");
      }
      if (!(1.0 < std::sqrt(b) && std::sqrt(b) < a && a <= b && b <= 2.0)) {
        throw ArgumentError("reverse Ornstein-Uhlenbeck motion requires 1 < sqrt(b) < a <= b <= 2; got a = " + fmt(a) +
                            ", b = " + fmt(b) + ", sqrt(b) = " + fmt(std::sqrt(b)));
      }
      break;
    case KernelKind::lfmm: {
      if (!(b < 2.0)) {
        throw ArgumentError("linear fractional multistable motion requires alpha(x) in [a, b] with 0 < a <= b < 2; got b = " +
                            fmt(b));
      }
      const double lo = 1.0 / a - 1.0 / b;
      const double hi = 1.0 + 1.0 / b - 1.0 / a;
      if (!(lo < params.h && params.h < hi)) {
        throw ArgumentError("linear fractional multistable motion requires 1/a - 1/b < h < 1 + 1/b - 1/a, i.e. " +
                            fmt(lo) + " < h < " + fmt(hi) + "; got h = " + fmt(params.h) + " with a = " + fmt(a) +
                            ", b = " + fmt(b));
      }
      if (!std::isfinite(params.b_plus) || !std::isfinite(params.b_minus)) {
        throw ArgumentError("lfmm coefficients b+ and b- must be finite");
      }
      break;
    }
    case KernelKind::custom:
      if (!params.section) throw ArgumentError("custom kernel needs a section function");
      break;
  }
  return ProcessKernel(kind, params, alpha);
}

RealFunction ProcessKernel::section(double t) const {
  if (!std::isfinite(t)) throw ArgumentError("kernel time must be finite");
  switch (kind_) {
    case KernelKind::weighted_levy: {
      RealFunction base = signed_indicator(t, 1.0);
      if (!params_.weight || base.support().empty()) return base;
      return base.weighted(params_.weight, params_.weight_bound);
    }
    case KernelKind::reverse_ou:
      return RealFunction::exponential(params_.lambda, t, 1.0);
    case KernelKind::lfmm:
      return lfmm_increment(t, 0.0);
    case KernelKind::custom:
      return params_.section(t);
  }
  return RealFunction::zero();
}

RealFunction ProcessKernel::lfmm_increment(double s, double v) const {
  const double bp = params_.b_plus;
  const double bm = params_.b_minus;
  if (s == v || (bp == 0.0 && bm == 0.0)) return RealFunction::zero();
  const double h = params_.h;
  const double d = s - v;
  const IndexFunction alpha = alpha_;
  auto f = [alpha, h, bp, bm, s, v, d](double x) {
    const double beta = h - 1.0 / alpha(x);
    if (std::abs(beta) < kBetaZero) return (bp - bm) * (signed_unit(s, x) - signed_unit(v, x));
    double y = 0.0;
    if (bp != 0.0) y += bp * power_difference(v - x, d, beta);
    if (bm != 0.0) y -= bm * power_difference(x - s, d, beta);
    return y;
  };

  const double a = alpha_.lower();
  const double b = alpha_.upper();
  const double beta_hi = h - 1.0 / b;
  const double beta_abs = std::max(std::abs(h - 1.0 / a), std::abs(h - 1.0 / b));
  // For |x| >= max(2|s|, 2|v|, 2) the mean value theorem gives
  // |f(s,x) - f(v,x)| <= |b| |beta| |s - v| (|x|/2)^(beta_hi - 1).
  const double reach = std::max({2.0 * std::abs(s), 2.0 * std::abs(v), 2.0});
  const double decay = 1.0 - beta_hi;
  const double coeff = beta_abs * std::abs(d) * std::pow(2.0, decay);

  Support sup;
  sup.lo = bp != 0.0 ? -kInf : std::min(s, v);
  sup.hi = bm != 0.0 ? kInf : std::max(s, v);
  if (bp != 0.0) sup.left = Tail::power(-reach, decay, std::abs(bp) * coeff);
  if (bm != 0.0) sup.right = Tail::power(reach, decay, std::abs(bm) * coeff);

  std::vector<Singularity> sing;
  for (double p : {s, v}) {
    const double beta = h - 1.0 / alpha_(p);
    if (beta < 0.0) sing.push_back({p, beta});
  }
  std::vector<double> bps{s, v};
  if (!alpha_.is_constant()) {
    const auto extra = alpha_.breakpoints(-reach, reach);
    bps.insert(bps.end(), extra.begin(), extra.end());
  }
  std::ostringstream label;
  label << "lfmm(" << s << " - " << v << ", h=" << h << ")";
  return RealFunction(f, sup, bps, sing, label.str());
}

RealFunction ProcessKernel::increment(double s, double v) const {
  if (!std::isfinite(s) || !std::isfinite(v)) throw ArgumentError("kernel times must be finite");
  if (kind_ == KernelKind::lfmm) return lfmm_increment(s, v);
  const std::vector<RealFunction> fs{section(s), section(v)};
  const std::vector<double> cs{1.0, -1.0};
  return RealFunction::linear_combination(fs, cs);
}

double ProcessKernel::operator()(double t, double x) const { return section(t)(x); }

std::string ProcessKernel::describe() const {
  std::ostringstream os;
  os << to_string(kind_);
  switch (kind_) {
    case KernelKind::reverse_ou:
      os << "(lambda=" << params_.lambda << ")";
      break;
    case KernelKind::lfmm:
      os << "(h=" << params_.h << ", b+=" << params_.b_plus << ", b-=" << params_.b_minus << ")";
      break;
    default:
      break;
  }
  os << " with alpha " << alpha_.describe();
  return os.str();
}

LocalFormSpec tangent_form(const ProcessKernel& kernel, double u) {
  const double au = kernel.alpha()(u);
  LocalFormSpec spec;
  spec.frozen_alpha = au;
  switch (kernel.kind()) {
    case KernelKind::weighted_levy: {
      const double wu = kernel.params().weight ? kernel.params().weight(u) : 1.0;
      spec.h_exponent = 1.0 / au;
      spec.local_kernel = [wu](double t) { return signed_indicator(t, wu); };
      break;
    }
    case KernelKind::reverse_ou:
      spec.h_exponent = 1.0 / au;
      spec.local_kernel = [](double t) { return signed_indicator(t, -1.0); };
      break;
    case KernelKind::lfmm: {
      const ProcessKernel frozen = make_kernel(KernelKind::lfmm, kernel.params(), IndexFunction::constant(au));
      spec.h_exponent = kernel.params().h;
      spec.local_kernel = [frozen](double t) { return frozen.section(t); };
      break;
    }
    case KernelKind::custom:
      throw ArgumentError("custom kernels have no built-in local form");
  }
  return spec;
}

namespace {

// \int_{x < lo} |f|^{a,b} + \int_{x > hi} |f|^{a,b}
double outside_mass(const RealFunction& f, double lo, double hi, double a, double b, const QuadratureSpec& quad) {
  const Support& s = f.support();
  double mass = 0.0;
  if (s.lo < lo) {
    Support part{s.lo, lo, s.left, {}};
    if (!std::isfinite(s.lo) && part.left.kind != TailKind::none) part.left.start = std::min(part.left.start, lo);
    std::vector<Singularity> sing;
    for (const auto& sg : f.singularities()) {
      if (sg.point <= lo) sing.push_back(sg);
    }
    mass += integrate_ab_power(RealFunction(f.evaluator(), part, f.breakpoints(), sing), a, b, quad);
  }
  if (s.hi > hi) {
    Support part{hi, s.hi, {}, s.right};
    if (!std::isfinite(s.hi) && part.right.kind != TailKind::none) part.right.start = std::max(part.right.start, hi);
    std::vector<Singularity> sing;
    for (const auto& sg : f.singularities()) {
      if (sg.point >= hi) sing.push_back(sg);
    }
    mass += integrate_ab_power(RealFunction(f.evaluator(), part, f.breakpoints(), sing), a, b, quad);
  }
  return mass;
}

double cells_in(double lo, double hi, int level) { return std::ldexp(hi - lo, level) + 2.0; }

}  // namespace

SimulationWindow simulation_window(const ProcessKernel& kernel, const std::vector<double>& times, int level,
                                   const PathOptions& options) {
  if (times.empty()) throw ArgumentError("sample_path needs at least one time");
  const auto [tmin_it, tmax_it] = std::minmax_element(times.begin(), times.end());
  const double tmin = *tmin_it;
  const double tmax = *tmax_it;
  const double a = kernel.alpha().lower();
  const double b = kernel.alpha().upper();
  const double eps = options.truncation_epsilon;
  SimulationWindow w;
  switch (kernel.kind()) {
    case KernelKind::weighted_levy:
      w.lo = std::min(0.0, tmin);
      w.hi = std::max(0.0, tmax);
      break;
    case KernelKind::reverse_ou: {
      const double rate = a * kernel.params().lambda;
      w.lo = tmin;
      w.hi = tmax + std::max(0.0, std::log(1.0 / (rate * eps)) / rate);
      break;
    }
    case KernelKind::lfmm: {
      const bool left = kernel.params().b_plus != 0.0;
      const bool right = kernel.params().b_minus != 0.0;
      const double core_lo = std::min(0.0, tmin);
      const double core_hi = std::max(0.0, tmax);
      std::vector<RealFunction> extremes{kernel.section(tmin), kernel.section(tmax)};
      double ext = std::max(1.0, tmax - tmin);
      auto residual = [&](double e) {
        const double lo = left ? core_lo - e : core_lo;
        const double hi = right ? core_hi + e : core_hi;
        double r = 0.0;
        for (const auto& f : extremes) r = std::max(r, outside_mass(f, lo, hi, a, b, options.quad));
        return r;
      };
      double res = residual(ext);
      const auto cap = static_cast<double>(options.max_window_cells);
      while (res > eps) {
        const double next = 2.0 * ext;
        const double span = (core_hi - core_lo) + (left ? next : 0.0) + (right ? next : 0.0);
        if (std::ldexp(span, level) + 2.0 > cap) break;
        ext = next;
        res = residual(ext);
      }
      w.lo = left ? core_lo - ext : core_lo;
      w.hi = right ? core_hi + ext : core_hi;
      w.residual_tail_mass = res;
      break;
    }
    case KernelKind::custom: {
      w.lo = kInf;
      w.hi = -kInf;
      for (double t : times) {
        const Support s = kernel.section(t).support();
        if (s.empty()) continue;
        if (!std::isfinite(s.lo) || !std::isfinite(s.hi)) {
          throw ArgumentError("custom kernels must have bounded sections to be simulated");
        }
        w.lo = std::min(w.lo, s.lo);
        w.hi = std::max(w.hi, s.hi);
      }
      if (w.lo > w.hi) w.lo = w.hi = 0.0;
      break;
    }
  }
  if (cells_in(w.lo, w.hi, level) > static_cast<double>(options.limits.max_cells)) {
    std::ostringstream os;
    os << "simulation window [" << w.lo << ", " << w.hi << "] at level " << level << " exceeds the cap of "
       << options.limits.max_cells << " cells";
    throw ResourceError(os.str());
  }
  return w;
}

PathSample sample_path(const ProcessKernel& kernel, const std::vector<double>& times, int level,
                       const RngStream& stream, const PathOptions& options) {
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) throw ArgumentError("path times must be strictly increasing");
  }
  const SimulationWindow w = simulation_window(kernel, times, level, options);
  const MeasureIncrements inc = simulate_increments(kernel.alpha(), level, w.lo, w.hi, stream, options.limits);
  PathSample path;
  path.times = times;
  path.level = level;
  path.stream = stream;
  path.window_lo = inc.x_lo();
  path.window_hi = inc.x_hi();
  path.residual_tail_mass = w.residual_tail_mass;
  path.values.reserve(times.size());
  for (double t : times) path.values.push_back(integrate_sample(kernel.section(t), inc, options.quad));
  return path;
}

double marginal_cf(const ProcessKernel& kernel, const std::vector<double>& t_list,
                   const std::vector<double>& theta_list, const QuadratureSpec& quad) {
  if (t_list.size() != theta_list.size()) throw ArgumentError("marginal_cf needs one theta per time");
  CfSpec spec;
  spec.alpha = kernel.alpha();
  spec.thetas = theta_list;
  for (double t : t_list) spec.functions.push_back(kernel.section(t));
  return cf_joint(spec, quad);
}

HolderFit fit_holder_constant(const std::function<double(double, double)>& distance, double lo, double hi,
                              double exponent, int levels) {
  if (!(lo < hi)) throw ArgumentError("Holder fit needs lo < hi");
  if (levels < 2) throw ArgumentError("Holder fit needs at least two separations");
  constexpr int kPairs = 8;
  HolderFit fit;
  const double len = hi - lo;
  for (int k = 1; k <= levels; ++k) {
    const double sep = std::ldexp(len, -k);
    double c = 0.0;
    for (int i = 0; i < kPairs; ++i) {
      const double t = lo + (len - sep) * i / (kPairs - 1);
      const double u = t + sep;
      const double ratio = distance(t, u) / std::pow(sep, exponent);
      if (!(ratio <= c)) {
        c = ratio;
        if (!(c <= fit.c1_max)) {
          fit.c1_max = c;
          fit.worst_t = t;
          fit.worst_u = u;
        }
      }
    }
    fit.separations.push_back(sep);
    fit.c1.push_back(c);
  }
  const double coarse = *std::max_element(fit.c1.begin(), fit.c1.end() - 1);
  fit.stable = std::isfinite(fit.c1.back()) && fit.c1.back() <= 1.05 * coarse + 1e-12;
  return fit;
}

VerifyReport continuity_modulus_check(const ProcessKernel& kernel, double lo, double hi, double eta,
                                      const QuadratureSpec& quad, int levels) {
  const double a = kernel.alpha().lower();
  if (!(a > 1.0)) throw ArgumentError("the continuity check requires alpha(x) >= a > 1");
  if (!(eta >= 1.0 / a && eta < 1.0)) throw ArgumentError("the continuity check requires 1/a <= eta < 1");
  const IndexFunction& alpha = kernel.alpha();
  auto distance = [&](double t, double u) {
    if (t == u) return 0.0;
    const RealFunction d = kernel.increment(t, u);
    if (d.support().empty()) return 0.0;
    return integrate_alpha_power(d, alpha, quad);
  };
  const HolderFit fit = fit_holder_constant(distance, lo, hi, a * eta, levels);
  VerifyReport rep;
  rep.check = "continuity_modulus";
  for (std::size_t k = 0; k < fit.c1.size(); ++k) {
    rep.add("c1 at separation " + fmt(fit.separations[k]), fit.c1[k], kInf, std::isfinite(fit.c1[k]));
  }
  const double coarse = *std::max_element(fit.c1.begin(), fit.c1.end() - 1);
  rep.add_upper("c1 growth at finest separation", fit.c1.back(), 1.05 * coarse + 1e-12);
  rep.add_upper("D(t, t)", distance(lo, lo), 0.0);
  rep.provenance["kernel"] = kernel.describe();
  rep.provenance["interval"] = "[" + fmt(lo) + ", " + fmt(hi) + "]";
  rep.provenance["eta"] = fmt(eta);
  rep.provenance["c1"] = fmt(fit.c1_max);
  rep.provenance["worst_pair"] = "(" + fmt(fit.worst_t) + ", " + fmt(fit.worst_u) + ")";
  rep.finalize();
  return rep;
}

}  // namespace multistable

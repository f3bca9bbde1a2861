#include "multistable/function_spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "multistable/error.hpp"

namespace multistable {

namespace {

Tail integrand_tail(const Tail& t, double p_lo, double p_hi, double weight_bound) {
  Tail out = t;
  const double c = std::max(std::pow(t.coefficient, p_lo), std::pow(t.coefficient, p_hi)) * weight_bound;
  out.coefficient = c;
  if (t.kind == TailKind::exponential) out.rate = t.rate * p_lo;
  if (t.kind == TailKind::power) out.exponent = t.exponent * p_lo;
  return out;
}

// Finite window that the quadrature will actually mesh (tails excluded).
std::pair<double, double> meshed_window(const RealFunction& f, double p_lo, double eps) {
  const Support& s = f.support();
  auto reach = [&](const Tail& t) {
    if (t.kind != TailKind::exponential || !(t.rate > 0.0)) return 0.0;
    const double c = std::max(t.coefficient, 1.0);
    return std::max(0.0, std::log(c / (t.rate * p_lo * eps)) / (t.rate * p_lo));
  };
  const double lo = std::isfinite(s.lo) ? s.lo : s.left.start - reach(s.left);
  const double hi = std::isfinite(s.hi) ? s.hi : s.right.start + reach(s.right);
  return {lo, hi};
}

std::vector<double> index_breakpoints(const RealFunction& f, const IndexFunction& alpha, const QuadratureSpec& quad) {
  const auto [lo, hi] = meshed_window(f, alpha.lower(), quad.truncation_epsilon);
  return alpha.breakpoints(lo, hi);
}

}  // namespace

QuadratureResult integrate_power_field(const RealFunction& g, const PowerIntegrand& p, const QuadratureSpec& quad) {
  if (!(p.exponent_lo > 0.0) || !(p.exponent_hi >= p.exponent_lo)) {
    throw ArgumentError("power integrand needs 0 < exponent_lo <= exponent_hi");
  }
  const Support& s = g.support();
  if (s.empty()) return {};
  IntegrandInfo info;
  info.lo = s.lo;
  info.hi = s.hi;
  info.breakpoints = g.breakpoints();
  info.breakpoints.insert(info.breakpoints.end(), p.extra_breakpoints.begin(), p.extra_breakpoints.end());
  for (const auto& sg : g.singularities()) {
    if (sg.exponent >= 0.0) {
      info.breakpoints.push_back(sg.point);
      continue;
    }
    const double local = p.exponent ? p.exponent(sg.point) : p.exponent_hi;
    info.singularities.push_back({sg.point, sg.exponent * local});
  }
  info.left = integrand_tail(s.left, p.exponent_lo, p.exponent_hi, p.weight_bound);
  info.right = integrand_tail(s.right, p.exponent_lo, p.exponent_hi, p.weight_bound);

  const auto& f = g.evaluator();
  const double lo = s.lo;
  const double hi = s.hi;
  std::function<double(double)> integrand;
  if (p.exponent) {
    integrand = [&f, &p, lo, hi](double x) {
      if (x < lo || x > hi) return 0.0;
      const double y = std::abs(f(x));
      if (y == 0.0) return 0.0;
      const double v = std::pow(y, p.exponent(x));
      return p.weight ? v * p.weight(x) : v;
    };
  } else {
    // |y|^{a,b}
    integrand = [&f, &p, lo, hi](double x) {
      if (x < lo || x > hi) return 0.0;
      const double y = std::abs(f(x));
      if (y == 0.0) return 0.0;
      const double v = std::pow(y, y >= 1.0 ? p.exponent_hi : p.exponent_lo);
      return p.weight ? v * p.weight(x) : v;
    };
  }
  return integrate(integrand, info, quad);
}

double integrate_alpha_power(const RealFunction& f, const IndexFunction& alpha, const QuadratureSpec& quad) {
  PowerIntegrand p;
  p.exponent = [&alpha](double x) { return alpha(x); };
  p.exponent_lo = alpha.lower();
  p.exponent_hi = alpha.upper();
  if (!f.support().empty()) p.extra_breakpoints = index_breakpoints(f, alpha, quad);
  return integrate_power_field(f, p, quad).value;
}

double integrate_ab_power(const RealFunction& f, double a, double b, const QuadratureSpec& quad) {
  PowerIntegrand p;
  p.exponent_lo = a;
  p.exponent_hi = b;
  return integrate_power_field(f, p, quad).value;
}

double norm_p(const RealFunction& f, double p, const QuadratureSpec& quad) {
  if (!(p > 0.0)) throw ArgumentError("norm_p needs p > 0");
  PowerIntegrand pi;
  pi.exponent = [p](double) { return p; };
  pi.exponent_lo = p;
  pi.exponent_hi = p;
  const double v = integrate_power_field(f, pi, quad).value;
  return std::pow(v, 1.0 / p);
}

double modular(const RealFunction& f, const IndexFunction& alpha, double lambda, const QuadratureSpec& quad) {
  if (!(lambda > 0.0)) throw ArgumentError("modular needs lambda > 0");
  return integrate_alpha_power(lambda == 1.0 ? f : f.scaled(1.0 / lambda), alpha, quad);
}

double luxemburg_norm(const RealFunction& f, const IndexFunction& alpha, const QuadratureSpec& quad) {
  // The index breakpoints do not depend on lambda; compute them once.
  PowerIntegrand p;
  p.exponent = [&alpha](double x) { return alpha(x); };
  p.exponent_lo = alpha.lower();
  p.exponent_hi = alpha.upper();
  if (!f.support().empty()) p.extra_breakpoints = index_breakpoints(f, alpha, quad);
  auto rho = [&](double lambda) { return integrate_power_field(f.scaled(1.0 / lambda), p, quad).value; };

  double lo = 1.0;
  double hi = 1.0;
  double r1 = rho(1.0);
  if (r1 == 0.0) return 0.0;
  if (r1 == 1.0) return 1.0;
  int steps = 0;
  if (r1 > 1.0) {
    double r = r1;
    while (r > 1.0) {
      if (++steps > 64) throw NumericError("luxemburg_norm: no bracket below 2^64", lo, r);
      lo = hi;
      hi *= 2.0;
      r = rho(hi);
    }
    if (r == 1.0) return hi;
  } else {
    double r = r1;
    while (r < 1.0) {
      if (++steps > 64) throw NumericError("luxemburg_norm: no bracket above 2^-64", hi, r);
      hi = lo;
      lo *= 0.5;
      r = rho(lo);
    }
    if (r == 1.0) return lo;
  }
  // rho(lo) > 1 > rho(hi)
  while ((hi - lo) > 1e-10 * hi) {
    const double mid = 0.5 * (lo + hi);
    const double r = rho(mid);
    if (r == 1.0) return mid;
    if (r > 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

LogContinuityReport log_continuity_diagnostic(const IndexFunction& alpha, double lo, double hi,
                                              const std::vector<double>& r_values) {
  if (r_values.empty()) throw ArgumentError("log_continuity_diagnostic needs at least one r");
  if (!(lo < hi)) throw ArgumentError("log_continuity_diagnostic needs lo < hi");
  for (std::size_t i = 0; i < r_values.size(); ++i) {
    if (!(r_values[i] > 0.0 && r_values[i] < 1.0)) throw ArgumentError("r values must lie in (0, 1)");
    if (i > 0 && !(r_values[i] < r_values[i - 1])) throw ArgumentError("r values must be strictly decreasing");
  }
  constexpr int kGrid = 4096;
  LogContinuityReport rep;
  rep.r_values = r_values;
  for (double r : r_values) {
    double m = 0.0;
    for (int i = 0; i < kGrid; ++i) {
      const double x = lo + (hi - lo) * i / (kGrid - 1);
      m = std::max(m, std::abs(alpha(x + r) - alpha(x)));
    }
    rep.moduli.push_back(m * std::abs(std::log(r)));
  }
  const bool all_zero = std::all_of(rep.moduli.begin(), rep.moduli.end(), [](double m) { return m <= 1e-12; });
  bool non_increasing = true;
  for (std::size_t i = 1; i < rep.moduli.size(); ++i) {
    if (rep.moduli[i] > rep.moduli[i - 1]) non_increasing = false;
  }
  rep.plausibly_satisfied = all_zero || (non_increasing && rep.moduli.back() <= 0.5 * rep.moduli.front());
  rep.note = "finite-sequence trend diagnostic; an o(1/log r) limit cannot be established numerically";
  return rep;
}

}  // namespace multistable

#include "multistable/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "multistable/error.hpp"
#include "multistable/function_spaces.hpp"

namespace multistable {

namespace {

constexpr double kFloor = 1e-8;

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(8);
  os << v;
  return os.str();
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (double x : v) s += (s.empty() ? "" : ",") + fmt(x);
  return s;
}

// Finite window holding f up to |f|^{a,b} tail mass eps.
std::pair<double, double> integration_window(const RealFunction& f, double a, double eps) {
  const Support& s = f.support();
  if (s.empty()) return {0.0, 0.0};
  auto reach = [&](const Tail& t) {
    if (t.kind == TailKind::exponential) {
      const double rate = a * t.rate;
      const double c = std::pow(std::max(t.coefficient, 1.0), a);
      return std::max(0.0, std::log(c / (rate * eps)) / rate);
    }
    if (t.kind == TailKind::power) {
      // C^a |x|^{-p a} integrates to C^a X^{1 - p a} / (p a - 1) beyond X.
      const double q = t.exponent * a - 1.0;
      if (!(q > 0.0)) throw DomainError("power tail is not integrable for the lower index");
      const double c = std::pow(std::max(t.coefficient, 1.0), a);
      const double x = std::pow(c / (q * eps), 1.0 / q);
      return std::max(0.0, x - std::abs(t.start));
    }
    return 0.0;
  };
  const double lo = std::isfinite(s.lo) ? s.lo : s.left.start - reach(s.left);
  const double hi = std::isfinite(s.hi) ? s.hi : s.right.start + reach(s.right);
  return {lo, hi};
}

void add_trend(VerifyReport& rep, const std::string& what, const std::vector<double>& r_seq,
               const std::vector<double>& values, double final_tolerance) {
  for (std::size_t k = 0; k < values.size(); ++k) {
    const std::string name = what + " at r=" + fmt(r_seq[k]);
    if (k == 0) {
      rep.add(name, values[k], kInf, std::isfinite(values[k]));
    } else {
      rep.add_upper(name, values[k], values[k - 1] + kFloor);
    }
  }
  rep.add_upper(what + " final", values.back(), final_tolerance);
}

void check_r_seq(const std::vector<double>& r_seq) {
  if (r_seq.empty()) throw ArgumentError("r sequence must not be empty");
  for (std::size_t i = 0; i < r_seq.size(); ++i) {
    if (!(r_seq[i] > 0.0 && r_seq[i] <= 1.0)) throw ArgumentError("r values must lie in (0, 1]");
    if (i > 0 && !(r_seq[i] < r_seq[i - 1])) throw ArgumentError("r values must be strictly decreasing");
  }
}

}  // namespace

bool non_increasing(const std::vector<double>& values, double floor) {
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i] <= values[i - 1] + floor)) return false;
  }
  return true;
}

bool strictly_decreasing(const std::vector<double>& values) {
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(values[i] < values[i - 1])) return false;
  }
  return true;
}

EcfEstimate ecf(const std::vector<std::vector<double>>& samples, const std::vector<std::vector<double>>& theta_grid) {
  if (samples.empty()) throw ArgumentError("ecf needs samples");
  if (samples.size() < 100) throw ArgumentError("ecf needs at least 100 samples");
  const std::size_t d = samples.front().size();
  for (const auto& s : samples) {
    if (s.size() != d) throw ArgumentError("ecf samples must share one dimension");
  }
  for (const auto& t : theta_grid) {
    if (t.size() != d) throw ArgumentError("ecf theta vectors must match the sample dimension");
  }
  EcfEstimate e;
  e.theta_grid = theta_grid;
  e.n_samples = samples.size();
  e.band = 4.0 / std::sqrt(static_cast<double>(e.n_samples));
  const double inv = 1.0 / static_cast<double>(e.n_samples);
  for (const auto& theta : theta_grid) {
    double re = 0.0;
    double im = 0.0;
    for (const auto& x : samples) {
      double dot = 0.0;
      for (std::size_t j = 0; j < d; ++j) dot += theta[j] * x[j];
      re += std::cos(dot);
      im += std::sin(dot);
    }
    e.re.push_back(re * inv);
    e.im.push_back(im * inv);
  }
  return e;
}

EcfEstimate ecf(const std::vector<double>& samples, const std::vector<double>& thetas) {
  std::vector<std::vector<double>> rows;
  rows.reserve(samples.size());
  for (double x : samples) rows.push_back({x});
  std::vector<std::vector<double>> grid;
  for (double t : thetas) grid.push_back({t});
  return ecf(rows, grid);
}

std::vector<std::vector<double>> default_theta_grid(std::size_t d) {
  if (d == 0) throw ArgumentError("theta grid dimension must be positive");
  std::vector<std::vector<double>> grid;
  const std::vector<std::vector<double>> dirs2{{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}, {1.0, -1.0}, {0.5, 1.0}};
  for (int i = 0; i <= 20; ++i) {
    const double s = -2.0 + 0.2 * i;
    std::vector<double> theta(d, 0.0);
    if (d == 1) {
      theta[0] = s;
    } else if (d == 2) {
      theta = dirs2[static_cast<std::size_t>(i) % dirs2.size()];
      for (double& t : theta) t *= s;
    } else {
      theta[static_cast<std::size_t>(i) % d] = s;
      theta[static_cast<std::size_t>(i + 1) % d] = 0.5 * s;
    }
    grid.push_back(theta);
  }
  return grid;
}

double ecf_deviation(const EcfEstimate& e, const std::vector<double>& target) {
  if (target.size() != e.re.size()) throw ArgumentError("ecf target size mismatch");
  double dev = 0.0;
  for (std::size_t i = 0; i < target.size(); ++i) {
    dev = std::max({dev, std::abs(e.re[i] - target[i]), std::abs(e.im[i])});
  }
  return dev;
}

double tail_constant_c1(double a, double b) {
  if (!(a > 0.0 && a <= b && b <= 2.0)) throw ArgumentError("tail constant needs 0 < a <= b <= 2");
  auto c = [](double q) { return std::pow(2.0, q + 1.0) / (q + 1.0); };
  return std::max(c(a), c(b));
}

double moment_constant_c2(double a, double b, double p) {
  if (!(p > 0.0 && p < a)) throw ArgumentError("the moment bound requires 0 < p < a");
  return tail_constant_c1(a, b) * a / (a - p);
}

VerifyReport independence_check(const IndexFunction& alpha, const std::vector<IntervalSet>& sets,
                                const MonteCarloOptions& mc, const RngStream& stream,
                                std::vector<std::vector<double>> theta_grid) {
  if (sets.empty()) throw ArgumentError("independence_check needs at least one set");
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (sets[i].empty()) throw ArgumentError("independence_check sets must be non-empty");
    for (std::size_t j = i + 1; j < sets.size(); ++j) {
      if (sets[i].overlap(sets[j]) > 0.0) {
        throw ArgumentError("independence_check sets " + std::to_string(i) + " and " + std::to_string(j) + " overlap");
      }
    }
  }
  const std::size_t d = sets.size();
  if (theta_grid.empty()) theta_grid = default_theta_grid(d);
  double lo = kInf;
  double hi = -kInf;
  for (const auto& s : sets) {
    lo = std::min(lo, s.lower());
    hi = std::max(hi, s.upper());
  }
  std::vector<std::vector<double>> samples(mc.n_paths, std::vector<double>(d));
  for (std::size_t i = 0; i < mc.n_paths; ++i) {
    const MeasureIncrements inc =
        simulate_increments(alpha, mc.level, lo, hi, derive_stream(stream, kPathTag, static_cast<std::int64_t>(i)),
                            mc.limits);
    for (std::size_t j = 0; j < d; ++j) samples[i][j] = measure_of_set(sets[j], inc);
  }
  const EcfEstimate e = ecf(samples, theta_grid);

  const IndexFunction alpha_n = alpha.dyadic(mc.level);
  std::vector<double> target;
  for (const auto& theta : theta_grid) {
    double prod = 1.0;
    for (std::size_t j = 0; j < d; ++j) {
      CfSpec spec;
      spec.functions = {sets[j].indicator()};
      spec.thetas = {theta[j]};
      spec.alpha = alpha_n;
      prod *= cf_joint(spec, mc.quad);
    }
    target.push_back(prod);
  }
  VerifyReport rep;
  rep.check = "independence";
  rep.add_upper("sup |joint ECF - product of marginal CFs|", ecf_deviation(e, target), e.band);
  rep.provenance["level"] = std::to_string(mc.level);
  rep.provenance["n_paths"] = std::to_string(mc.n_paths);
  rep.provenance["sets"] = std::to_string(d);
  rep.provenance["theta_points"] = std::to_string(theta_grid.size());
  rep.note = "marginal CFs use the dyadic index of the simulated level";
  rep.finalize();
  return rep;
}

VerifyReport additivity_check(const IndexFunction& alpha, const IntervalSet& a_set, const IntervalSet& b_set,
                              const MonteCarloOptions& mc, const RngStream& stream) {
  if (a_set.overlap(b_set) > 0.0) throw ArgumentError("additivity_check sets overlap");
  const IntervalSet both = a_set.unite(b_set);
  double mismatches = 0.0;
  double worst = 0.0;
  for (std::size_t i = 0; i < mc.n_paths; ++i) {
    const MeasureIncrements inc =
        simulate_increments(alpha, mc.level, both.lower(), both.upper(),
                            derive_stream(stream, kPathTag, static_cast<std::int64_t>(i)), mc.limits);
    const ExactSum lhs = measure_exact(both, inc);
    const ExactSum rhs = measure_exact(a_set, inc) + measure_exact(b_set, inc);
    if (!(lhs == rhs)) {
      mismatches += 1.0;
      worst = std::max(worst, std::abs(lhs.to_double() - rhs.to_double()));
    }
  }
  VerifyReport rep;
  rep.check = "additivity";
  rep.add_upper("paths with M(A u B) != M(A) + M(B)", mismatches, 0.0);
  rep.add_upper("largest difference", worst, 0.0);
  rep.provenance["level"] = std::to_string(mc.level);
  rep.provenance["n_paths"] = std::to_string(mc.n_paths);
  rep.finalize();
  return rep;
}

VerifyReport cf_convergence_check(const std::vector<IndexFunction>& alpha_seq, const IndexFunction& alpha_limit,
                                  const std::vector<RealFunction>& functions,
                                  const std::vector<std::vector<double>>& theta_grid, const QuadratureSpec& quad,
                                  double final_tolerance) {
  if (alpha_seq.empty()) throw ArgumentError("cf_convergence_check needs a non-empty sequence");
  for (const auto& a : alpha_seq) {
    if (a.lower() != alpha_limit.lower() || a.upper() != alpha_limit.upper()) {
      throw ArgumentError("cf_convergence_check index functions must share the bounds [a, b]");
    }
  }
  auto cf_at = [&](const IndexFunction& alpha, const std::vector<double>& theta) {
    CfSpec spec;
    spec.functions = functions;
    spec.thetas = theta;
    spec.alpha = alpha;
    return cf_joint(spec, quad);
  };
  std::vector<double> limit;
  for (const auto& theta : theta_grid) limit.push_back(cf_at(alpha_limit, theta));
  std::vector<double> devs;
  for (const auto& alpha : alpha_seq) {
    double dev = 0.0;
    for (std::size_t i = 0; i < theta_grid.size(); ++i) {
      dev = std::max(dev, std::abs(cf_at(alpha, theta_grid[i]) - limit[i]));
    }
    devs.push_back(dev);
  }
  VerifyReport rep;
  rep.check = "cf_convergence";
  std::vector<double> idx;
  for (std::size_t k = 0; k < devs.size(); ++k) idx.push_back(static_cast<double>(k));
  for (std::size_t k = 0; k < devs.size(); ++k) {
    const std::string name = "sup CF deviation, sequence entry " + std::to_string(k);
    if (k == 0) {
      rep.add(name, devs[k], kInf, std::isfinite(devs[k]));
    } else {
      rep.add_upper(name, devs[k], devs[k - 1] + kFloor);
    }
  }
  rep.add_upper("final sup CF deviation", devs.back(), final_tolerance);
  rep.provenance["strictly_decreasing"] = strictly_decreasing(devs) ? "true" : "false";
  rep.provenance["theta_points"] = std::to_string(theta_grid.size());
  rep.finalize();
  return rep;
}

std::vector<double> sample_integrals(const RealFunction& g, const IndexFunction& alpha, const MonteCarloOptions& mc,
                                     const RngStream& stream) {
  const auto [lo, hi] = integration_window(g, alpha.lower(), mc.quad.truncation_epsilon);
  std::vector<double> out(mc.n_paths);
  CellWeights weights;
  bool have_weights = false;
  for (std::size_t i = 0; i < mc.n_paths; ++i) {
    const MeasureIncrements inc = simulate_increments(
        alpha, mc.level, lo, hi, derive_stream(stream, kPathTag, static_cast<std::int64_t>(i)), mc.limits);
    if (!have_weights) {
      weights = cell_weights(g, inc, mc.quad);
      have_weights = true;
    }
    out[i] = apply_weights(weights, inc).to_double();
  }
  return out;
}

VerifyReport tail_bound_check(const RealFunction& g, const IndexFunction& alpha, const std::vector<double>& lambdas,
                              const MonteCarloOptions& mc, const RngStream& stream, const TailCheckOptions& opts) {
  for (double l : lambdas) {
    if (!(l > 0.0)) throw ArgumentError("tail_bound_check needs lambda > 0");
  }
  const double c1 = tail_constant_c1(alpha.lower(), alpha.upper()) * opts.c1_scale;
  const std::vector<double> xs = sample_integrals(g, alpha, mc, stream);
  const auto n = static_cast<double>(xs.size());
  VerifyReport rep;
  rep.check = "tail_bound";
  for (double l : lambdas) {
    double hits = 0.0;
    for (double x : xs) hits += std::abs(x) >= l ? 1.0 : 0.0;
    const double p = hits / n;
    const double bound = g.support().empty() ? 0.0 : c1 * modular(g, alpha, l, mc.quad);
    const double se = std::sqrt(p * (1.0 - p) / n);
    rep.add_upper("P(|I(g)| >= " + fmt(l) + ")", p, bound + 3.0 * se);
  }
  rep.provenance["c1"] = fmt(c1);
  rep.provenance["lambdas"] = join(lambdas);
  rep.provenance["level"] = std::to_string(mc.level);
  rep.provenance["n_paths"] = std::to_string(mc.n_paths);
  rep.finalize();
  return rep;
}

VerifyReport moment_bound_check(const RealFunction& g, const IndexFunction& alpha, double p,
                                const MonteCarloOptions& mc, const RngStream& stream, double c2_scale) {
  const double c2 = moment_constant_c2(alpha.lower(), alpha.upper(), p) * c2_scale;
  const std::vector<double> xs = sample_integrals(g, alpha, mc, stream);
  std::vector<double> m(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) m[i] = std::pow(std::abs(xs[i]), p);
  const auto n = static_cast<double>(m.size());
  double mean = 0.0;
  for (double v : m) mean += v;
  mean /= n;

  constexpr int kResamples = 200;
  RngStream boot = derive_stream(stream, kBootstrapTag, 0);
  std::vector<double> means;
  for (int b = 0; b < kResamples; ++b) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
      const auto k = static_cast<std::size_t>(boot.next_uniform() * n);
      s += m[std::min(k, m.size() - 1)];
    }
    means.push_back(s / n);
  }
  double mu = 0.0;
  for (double v : means) mu += v;
  mu /= kResamples;
  double var = 0.0;
  for (double v : means) var += (v - mu) * (v - mu);
  const double se = std::sqrt(var / (kResamples - 1));

  const double norm = g.support().empty() ? 0.0 : luxemburg_norm(g, alpha, mc.quad);
  const double bound = c2 * std::pow(norm, p);
  VerifyReport rep;
  rep.check = "moment_bound";
  rep.add_upper("E|I(g)|^p", mean, bound + 3.0 * se);
  rep.provenance["p"] = fmt(p);
  rep.provenance["c2"] = fmt(c2);
  rep.provenance["norm"] = fmt(norm);
  rep.provenance["bootstrap_se"] = fmt(se);
  rep.provenance["level"] = std::to_string(mc.level);
  rep.provenance["n_paths"] = std::to_string(mc.n_paths);
  rep.finalize();
  return rep;
}

double localisability_condition_integral(const ProcessKernel& kernel, double u, double h_exp,
                                         const LocalFormSpec& local, double t, double r, const QuadratureSpec& quad) {
  const IndexFunction& alpha = kernel.alpha();
  const double a = alpha.lower();
  const double b = alpha.upper();
  const std::vector<double> cs{1.0, -1.0};
  const RealFunction diff = kernel.increment(u + r * t, u);
  const double bound = std::max(std::pow(r, -h_exp + 1.0 / a), std::pow(r, -h_exp + 1.0 / b));
  RealFunction scaled = diff.support().empty()
                            ? diff
                            : diff.pullback(u, r).weighted(
                                  [&alpha, u, r, h_exp](double z) { return std::pow(r, -h_exp + 1.0 / alpha(u + r * z)); },
                                  bound);
  if (!alpha.is_constant() && !scaled.support().empty() && scaled.support().bounded()) {
    std::vector<double> extra;
    for (double x : alpha.breakpoints(u + r * scaled.support().lo, u + r * scaled.support().hi)) {
      extra.push_back((x - u) / r);
    }
    scaled = scaled.with_breakpoints(extra);
  }
  const std::vector<RealFunction> parts{scaled, local.local_kernel(t)};
  const RealFunction g = RealFunction::linear_combination(parts, cs);
  if (g.support().empty()) return 0.0;
  return integrate_ab_power(g, a, b, quad);
}

VerifyReport localisability_condition_check(const ProcessKernel& kernel, double u, double h_exp,
                                            const LocalFormSpec& local, const std::vector<double>& t_probe,
                                            const std::vector<double>& r_seq, const QuadratureSpec& quad) {
  check_r_seq(r_seq);
  if (t_probe.empty()) throw ArgumentError("localisability_condition_check needs probe times");
  VerifyReport rep;
  rep.check = "localisability_condition";
  bool strict = true;
  for (double t : t_probe) {
    std::vector<double> values;
    for (double r : r_seq) values.push_back(localisability_condition_integral(kernel, u, h_exp, local, t, r, quad));
    add_trend(rep, "condition integral t=" + fmt(t), r_seq, values, 1e-3);
    strict = strict && strictly_decreasing(values);
  }
  rep.provenance["kernel"] = kernel.describe();
  rep.provenance["u"] = fmt(u);
  rep.provenance["h"] = fmt(h_exp);
  rep.provenance["r"] = join(r_seq);
  rep.provenance["strictly_decreasing"] = strict ? "true" : "false";
  rep.note = "monotone trend over a finite r sequence; the limit r -> 0 is not established numerically";
  rep.finalize();
  return rep;
}

double localized_cf(const ProcessKernel& kernel, double u, double h_exp, const std::vector<double>& t_list,
                    const std::vector<double>& thetas, double r, const QuadratureSpec& quad) {
  if (t_list.size() != thetas.size()) throw ArgumentError("localized_cf needs one theta per time");
  const double scale = std::pow(r, -h_exp);
  std::vector<RealFunction> fs;
  std::vector<double> cs;
  for (std::size_t j = 0; j < t_list.size(); ++j) {
    fs.push_back(kernel.increment(u + r * t_list[j], u));
    cs.push_back(thetas[j] * scale);
  }
  const RealFunction g = RealFunction::linear_combination(fs, cs);
  if (g.support().empty()) return 1.0;
  return std::exp(-integrate_alpha_power(g, kernel.alpha(), quad));
}

double tangent_cf(const LocalFormSpec& local, const std::vector<double>& t_list, const std::vector<double>& thetas,
                  const QuadratureSpec& quad) {
  if (t_list.size() != thetas.size()) throw ArgumentError("tangent_cf needs one theta per time");
  CfSpec spec;
  spec.alpha = IndexFunction::constant(local.frozen_alpha);
  spec.thetas = thetas;
  for (double t : t_list) spec.functions.push_back(local.local_kernel(t));
  return cf_joint(spec, quad);
}

VerifyReport localize_cf_check(const ProcessKernel& kernel, double u, double h_exp, const LocalFormSpec& local,
                               const std::vector<double>& t_list, const std::vector<std::vector<double>>& theta_list,
                               const std::vector<double>& r_seq, const QuadratureSpec& quad) {
  check_r_seq(r_seq);
  if (theta_list.empty()) throw ArgumentError("localize_cf_check needs theta vectors");
  std::vector<double> target;
  for (const auto& theta : theta_list) target.push_back(tangent_cf(local, t_list, theta, quad));
  std::vector<double> devs;
  for (double r : r_seq) {
    double dev = 0.0;
    for (std::size_t i = 0; i < theta_list.size(); ++i) {
      dev = std::max(dev, std::abs(localized_cf(kernel, u, h_exp, t_list, theta_list[i], r, quad) - target[i]));
    }
    devs.push_back(dev);
  }
  VerifyReport rep;
  rep.check = "localize_cf";
  add_trend(rep, "sup CF deviation", r_seq, devs, 1e-3);
  rep.provenance["kernel"] = kernel.describe();
  rep.provenance["u"] = fmt(u);
  rep.provenance["h"] = fmt(h_exp);
  rep.provenance["t"] = join(t_list);
  rep.provenance["r"] = join(r_seq);
  rep.provenance["strictly_decreasing"] = strictly_decreasing(devs) ? "true" : "false";
  rep.finalize();
  return rep;
}

VerifyReport measure_scaling_check(const IndexFunction& alpha, double u, const std::vector<RealFunction>& functions,
                                   const std::vector<std::vector<double>>& theta_list, const std::vector<double>& r_seq,
                                   const QuadratureSpec& quad) {
  check_r_seq(r_seq);
  if (theta_list.empty()) throw ArgumentError("measure_scaling_check needs theta vectors");
  for (const auto& f : functions) {
    if (!f.support().bounded()) throw ArgumentError("measure_scaling_check needs compactly supported functions");
  }
  const IndexFunction frozen = IndexFunction::constant(alpha(u));
  std::vector<double> target;
  for (const auto& theta : theta_list) target.push_back(cf_joint({functions, theta, frozen}, quad));
  std::vector<double> devs;
  for (double r : r_seq) {
    double dev = 0.0;
    for (std::size_t i = 0; i < theta_list.size(); ++i) {
      dev = std::max(dev, std::abs(scaled_cf({functions, theta_list[i], alpha}, u, r, quad) - target[i]));
    }
    devs.push_back(dev);
  }
  VerifyReport rep;
  rep.check = "measure_scaling";
  add_trend(rep, "sup |scaled CF - frozen CF|", r_seq, devs, 1e-3);
  rep.provenance["u"] = fmt(u);
  rep.provenance["r"] = join(r_seq);
  rep.provenance["strictly_decreasing"] = strictly_decreasing(devs) ? "true" : "false";
  rep.finalize();
  return rep;
}

VerifyReport strong_localisability_diagnostic(const ProcessKernel& kernel, double u, double h_exp, double eta,
                                              const std::vector<double>& r_seq, const QuadratureSpec& quad,
                                              int levels) {
  check_r_seq(r_seq);
  const IndexFunction& alpha = kernel.alpha();
  const double a = alpha.lower();
  const double b = alpha.upper();
  if (!(eta > 1.0 / a)) throw ArgumentError("strong localisability requires eta > 1/a");
  VerifyReport rep;
  rep.check = "strong_localisability";
  std::vector<double> c1s;
  for (double r : r_seq) {
    // After x = u + r z the left side equals \int |f(u+rt,x) - f(u+rv,x)|^{alpha(x)} r^{-h alpha(x)} dx.
    auto distance = [&](double t, double v) {
      if (t == v) return 0.0;
      const RealFunction d = kernel.increment(u + r * t, u + r * v);
      if (d.support().empty()) return 0.0;
      PowerIntegrand p;
      p.exponent = [&alpha](double x) { return alpha(x); };
      p.exponent_lo = a;
      p.exponent_hi = b;
      if (!alpha.is_constant()) {
        p.weight = [&alpha, r, h_exp](double x) { return std::pow(r, -h_exp * alpha(x)); };
        p.weight_bound = std::max(std::pow(r, -h_exp * a), std::pow(r, -h_exp * b));
        if (d.support().bounded()) p.extra_breakpoints = alpha.breakpoints(d.support().lo, d.support().hi);
        return integrate_power_field(d, p, quad).value;
      }
      return std::pow(r, -h_exp * a) * integrate_power_field(d, p, quad).value;
    };
    const HolderFit fit = fit_holder_constant(distance, 0.0, 1.0, a * eta, levels);
    rep.add("separation stability of c1 at r=" + fmt(r), fit.c1.back(),
            1.05 * *std::max_element(fit.c1.begin(), fit.c1.end() - 1) + 1e-12, fit.stable);
    c1s.push_back(fit.c1_max);
  }
  const double hi = *std::max_element(c1s.begin(), c1s.end());
  const double lo = *std::min_element(c1s.begin(), c1s.end());
  rep.add_upper("c1 spread across r (max/min)", lo > 0.0 ? hi / lo : (hi > 0.0 ? kInf : 1.0), 2.0);
  rep.provenance["kernel"] = kernel.describe();
  rep.provenance["u"] = fmt(u);
  rep.provenance["h"] = fmt(h_exp);
  rep.provenance["eta"] = fmt(eta);
  rep.provenance["c1"] = join(c1s);
  rep.provenance["r"] = join(r_seq);
  rep.note = "diagnoses the sufficient integral condition; strong localisability itself is not tested";
  rep.finalize();
  return rep;
}

}  // namespace multistable

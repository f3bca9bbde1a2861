// Acceptance run: one [PASS]/[FAIL] line per criterion. Exit status is the
// number of failed criteria (0 when everything passes).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "multistable/cli.hpp"
#include "multistable/error.hpp"
#include "multistable/function_spaces.hpp"
#include "multistable/stable.hpp"
#include "multistable/verify.hpp"

using namespace multistable;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail += (detail.empty() ? "" : "; ") + std::string("failed: ") + what;
    }
  }
  void note(const std::string& what) { detail += (detail.empty() ? "" : "; ") + what; }
};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

int run(int id, const std::string& title, double limit_s, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (secs > limit_s) o.require(false, "runtime " + num(secs) + " s over " + num(limit_s) + " s");
  std::printf("[%s] %d %s (%.2f s): %s\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), secs, o.detail.c_str());
  std::fflush(stdout);
  return o.pass ? 0 : 1;
}

double rel(double x, double y) { return std::abs(x - y) / std::max(std::abs(y), 1e-300); }

IndexFunction sinusoid(double mid, double amp, double period, double phase = 0.0) {
  return IndexFunction::sinusoidal(mid, amp, period, mid - amp, mid + amp, phase);
}

// ---------------------------------------------------------------- 1
Outcome norm_oracle() {
  Outcome o;
  const IndexFunction pw = IndexFunction::piecewise_constant({1.0}, {1.0, 2.0}, 1.0, 2.0);
  const double n1 = luxemburg_norm(RealFunction::indicator(0, 1), IndexFunction::constant(1.3));
  const double n2 = luxemburg_norm(RealFunction::indicator(0, 2), IndexFunction::constant(1.0));
  // 2/l + 4/l^2 = 1  =>  l = 1 + sqrt(5)
  const double n3 = luxemburg_norm(RealFunction::indicator(0, 2, 2.0), pw);
  o.require(rel(n1, 1.0) <= 1e-8, "norm of 1_[0,1] = " + num(n1));
  o.require(rel(n2, 2.0) <= 1e-8, "norm of 1_[0,2] = " + num(n2));
  o.require(rel(n3, 1.0 + std::sqrt(5.0)) <= 1e-8, "norm of 2*1_[0,2] = " + num(n3));

  std::mt19937_64 gen(20240611);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  double worst_h = 0.0;
  double worst_c = 0.0;
  for (int k = 0; k < 20; ++k) {
    std::vector<double> edges{0.0};
    std::vector<double> values;
    for (int j = 0; j < 4; ++j) {
      edges.push_back(edges.back() + 0.2 + U(gen));
      values.push_back(-3.0 + 6.0 * U(gen));
    }
    const RealFunction f = RealFunction::step(edges, values);
    const double a = 0.6 + 0.8 * U(gen);
    const double b = std::min(2.0, a + 0.1 + 0.5 * U(gen));
    const IndexFunction alpha = IndexFunction::sinusoidal(0.5 * (a + b), 0.5 * (b - a), 0.5 + 2.0 * U(gen), a, b,
                                                          6.0 * U(gen));
    const double c = (U(gen) < 0.5 ? -1.0 : 1.0) * (0.1 + 10.0 * U(gen));
    const double base = luxemburg_norm(f, alpha);
    worst_h = std::max(worst_h, rel(luxemburg_norm(f.scaled(c), alpha), std::abs(c) * base));
    const double p = 0.5 + 1.5 * U(gen);
    worst_c = std::max(worst_c, rel(luxemburg_norm(f, IndexFunction::constant(p)), norm_p(f, p)));
  }
  o.require(worst_h <= 1e-8, "homogeneity error " + num(worst_h));
  o.require(worst_c <= 1e-8, "constant-index reduction error " + num(worst_c));
  o.note("closed forms within " + num(std::max({rel(n1, 1.0), rel(n2, 2.0), rel(n3, 1.0 + std::sqrt(5.0))})) +
         ", homogeneity " + num(worst_h) + ", constant reduction " + num(worst_c) + " over 20 cases");
  return o;
}

// ---------------------------------------------------------------- 2
Outcome stable_law() {
  Outcome o;
  constexpr std::size_t N = 100000;
  const double band = 4.0 / std::sqrt(static_cast<double>(N));
  const RngStream master = RngStream::from_seed(7);
  std::vector<double> thetas;
  for (int i = 0; i <= 40; ++i) thetas.push_back(-5.0 + 0.25 * i);
  double worst = 0.0;
  int combo = 0;
  for (double alpha : {0.6, 1.0, 1.4, 1.8, 2.0}) {
    for (double sigma : {0.5, 1.0, 2.0}) {
      RngStream s = derive_stream(master, kCaseTag, combo++);
      std::vector<double> x(N);
      for (auto& v : x) v = sample_stable({alpha, sigma}, s);
      const EcfEstimate e = ecf(x, thetas);
      std::vector<double> target;
      for (double t : thetas) target.push_back(std::exp(-std::pow(sigma * std::abs(t), alpha)));
      const double dev = ecf_deviation(e, target);
      worst = std::max(worst, dev);
      o.require(dev <= band, "ECF alpha=" + num(alpha) + " sigma=" + num(sigma) + " dev " + num(dev));
      if (alpha == 2.0) {
        double m = 0.0;
        for (double v : x) m += v;
        m /= N;
        double var = 0.0;
        for (double v : x) var += (v - m) * (v - m);
        var /= N - 1;
        o.require(rel(var, 2.0 * sigma * sigma) <= 0.02, "variance " + num(var) + " for sigma " + num(sigma));
      }
      if (alpha == 1.0) {
        std::sort(x.begin(), x.end());
        const double iqr = x[3 * N / 4] - x[N / 4];
        o.require(rel(iqr, 2.0 * sigma) <= 0.02, "IQR " + num(iqr) + " for sigma " + num(sigma));
      }
    }
  }
  o.note("worst ECF deviation " + num(worst) + " vs band " + num(band) + " over 15 (alpha, sigma)");
  return o;
}

// ---------------------------------------------------------------- 3
Outcome simulator_cf() {
  Outcome o;
  constexpr std::size_t N = 100000;
  constexpr int level = 8;
  const IndexFunction alpha =
      IndexFunction::piecewise_constant({0.25, 0.5, 0.75}, {1.2, 1.9, 0.8, 1.5}, 0.8, 1.9);
  const IntervalSet A({{0.125, 0.625}});
  const IntervalSet B({{0.625, 1.0}});
  const RngStream master = RngStream::from_seed(3);
  std::vector<std::vector<double>> samples(N, std::vector<double>(2));
  for (std::size_t i = 0; i < N; ++i) {
    const MeasureIncrements inc =
        simulate_increments(alpha, level, 0.0, 1.0, derive_stream(master, kPathTag, static_cast<std::int64_t>(i)));
    samples[i] = {measure_of_set(A, inc), measure_of_set(B, inc)};
  }
  const auto grid = default_theta_grid(2);
  const EcfEstimate e = ecf(samples, grid);
  std::vector<double> target;
  double oracle_gap = 0.0;
  for (const auto& th : grid) {
    const double cf = cf_joint({{A.indicator(), B.indicator()}, th, alpha});
    target.push_back(cf);
    // Piecewise-constant closed form: sum over alpha pieces of length * |theta_set|^alpha.
    const double expo = 0.125 * std::pow(std::abs(th[0]), 1.2) + 0.25 * std::pow(std::abs(th[0]), 1.9) +
                        0.125 * std::pow(std::abs(th[0]), 0.8) + 0.125 * std::pow(std::abs(th[1]), 0.8) +
                        0.25 * std::pow(std::abs(th[1]), 1.5);
    oracle_gap = std::max(oracle_gap, std::abs(cf - std::exp(-expo)));
  }
  const double dev = ecf_deviation(e, target);
  o.require(grid.size() == 21, "grid has 21 points");
  o.require(dev <= e.band, "joint ECF deviation " + num(dev));
  o.require(oracle_gap <= 1e-9, "cf_joint vs closed form " + num(oracle_gap));
  o.note("joint ECF deviation " + num(dev) + " vs band " + num(e.band) + "; cf_joint vs closed form " + num(oracle_gap));
  return o;
}

// ---------------------------------------------------------------- 4
Outcome scattering() {
  Outcome o;
  const IndexFunction alpha = sinusoid(1.4, 0.4, 1.5);
  MonteCarloOptions mc;
  mc.level = 6;
  mc.n_paths = 10000;
  const std::vector<IntervalSet> sets{IntervalSet({{0.0, 0.5}}), IntervalSet({{0.5, 1.0}})};
  int passed = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    if (independence_check(alpha, sets, mc, RngStream::from_seed(1000 + seed)).pass) ++passed;
  }
  o.require(passed >= 99, "independence passed on " + std::to_string(passed) + "/100 seeds");

  MonteCarloOptions add;
  add.level = 8;
  add.n_paths = 1000;
  const IntervalSet A({{0.1, 0.37}, {0.9, 0.93}});
  const IntervalSet B({{0.37, 0.81}, {0.95, 1.3}});
  const VerifyReport rep = additivity_check(alpha, A, B, add, RngStream::from_seed(4));
  o.require(rep.pass, "exact additivity");
  std::size_t rounded_ok = 0;
  const RngStream master = RngStream::from_seed(5);
  for (std::int64_t i = 0; i < 1000; ++i) {
    const MeasureIncrements inc = simulate_increments(alpha, 8, 0.0, 1.5, derive_stream(master, kPathTag, i));
    const double whole = measure_of_set(A.unite(B), inc);
    if (whole == (measure_exact(A, inc) + measure_exact(B, inc)).to_double()) ++rounded_ok;
  }
  o.require(rounded_ok == 1000, "measure_of_set(A u B) is the rounded exact sum");
  o.note("independence " + std::to_string(passed) + "/100 seeds; exact additivity on 1000 paths; measure_of_set(A u B) " +
         "bitwise equal to rounded M(A)+M(B) on " + std::to_string(rounded_ok) + "/1000");
  return o;
}

// ---------------------------------------------------------------- 5
Outcome fdd_convergence() {
  Outcome o;
  const IndexFunction alpha = sinusoid(1.5, 0.3, 2.0);
  const std::vector<int> levels{2, 4, 6, 8};
  std::vector<IndexFunction> seq;
  for (int n : levels) seq.push_back(alpha.dyadic(n));
  const std::vector<RealFunction> fs{RealFunction::indicator(0.0, 0.5), RealFunction::indicator(0.5, 1.0)};
  const auto grid = default_theta_grid(2);
  const VerifyReport rep = cf_convergence_check(seq, alpha, fs, grid);
  std::vector<double> devs;
  for (std::size_t k = 0; k < levels.size(); ++k) devs.push_back(rep.statistics[k].value);
  o.require(strictly_decreasing(devs), "deviations strictly decreasing");
  o.require(devs.back() < 1e-3, "deviation at level 8 below 1e-3");
  o.require(rep.pass, "cf_convergence_check");

  // Under alpha_n the exponent of an indicator is a finite sum over dyadic cells.
  double gap = 0.0;
  for (std::size_t k = 0; k < levels.size(); ++k) {
    const double w = std::ldexp(1.0, -levels[k]);
    for (const auto& th : grid) {
      double expo = 0.0;
      for (double x = 0.0; x < 1.0 - 0.5 * w; x += w) {
        expo += w * std::pow(std::abs(x < 0.5 ? th[0] : th[1]), alpha(x));
      }
      gap = std::max(gap, std::abs(cf_joint({fs, th, seq[k]}) - std::exp(-expo)));
    }
  }
  o.require(gap <= 1e-9, "dyadic CF vs cell-sum oracle " + num(gap));
  std::string d;
  for (double v : devs) d += (d.empty() ? "" : ", ") + num(v);
  o.note("deviations at levels 2,4,6,8: " + d + "; oracle gap " + num(gap));
  return o;
}

// ---------------------------------------------------------------- 6
Outcome tail_moment() {
  Outcome o;
  MonteCarloOptions mc;
  mc.level = 8;
  mc.n_paths = 10000;
  const RealFunction g = RealFunction::indicator(0.0, 1.0);
  const std::vector<double> lambdas{0.5, 1.0, 2.0, 4.0, 8.0};
  const double n = static_cast<double>(mc.n_paths);

  struct Oracle {
    std::string name;
    IndexFunction alpha;
    std::function<double(double)> tail;  // P(|X| >= l)
    double p;
    double moment;  // E|X|^p
  };
  const double pi = std::numbers::pi;
  const std::vector<Oracle> oracles{
      {"Cauchy", IndexFunction::constant(1.0), [pi](double l) { return 1.0 - 2.0 / pi * std::atan(l); }, 0.3,
       1.0 / std::cos(0.3 * pi / 2.0)},
      // N(0, 2): P(|X| >= l) = erfc(l / 2), E|X| = 2 / sqrt(pi)
      {"Gaussian", IndexFunction::constant(2.0), [](double l) { return std::erfc(l / 2.0); }, 1.0,
       2.0 / std::sqrt(pi)},
  };
  std::uint64_t seed = 60;
  for (const auto& orc : oracles) {
    const RngStream stream = RngStream::from_seed(seed++);
    const std::vector<double> xs = sample_integrals(g, orc.alpha, mc, stream);
    for (double l : lambdas) {
      double hits = 0.0;
      for (double x : xs) hits += std::abs(x) >= l ? 1.0 : 0.0;
      const double p = orc.tail(l);
      const double se = std::sqrt(p * (1.0 - p) / n);
      o.require(std::abs(hits / n - p) <= 4.0 * se, orc.name + " tail at " + num(l));
    }
    double m = 0.0;
    double m2 = 0.0;
    for (double x : xs) {
      const double v = std::pow(std::abs(x), orc.p);
      m += v;
      m2 += v * v;
    }
    m /= n;
    const double se = std::sqrt((m2 / n - m * m) / n);
    o.require(std::abs(m - orc.moment) <= 4.0 * se, orc.name + " moment " + num(m) + " vs " + num(orc.moment));
    o.require(tail_bound_check(g, orc.alpha, lambdas, mc, stream).pass, orc.name + " tail bound");
    o.require(moment_bound_check(g, orc.alpha, orc.p, mc, stream).pass, orc.name + " moment bound");
    o.require(!tail_bound_check(g, orc.alpha, lambdas, mc, stream, {0.1}).pass, orc.name + " c1/10 control fails");
  }

  std::mt19937_64 gen(6);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  MonteCarloOptions rmc;
  rmc.level = 7;
  rmc.n_paths = 5000;
  int random_pass = 0;
  for (int k = 0; k < 10; ++k) {
    std::vector<double> edges{0.0, 0.25, 0.5, 0.75, 1.0};
    std::vector<double> values;
    for (int j = 0; j < 4; ++j) values.push_back(-2.0 + 4.0 * U(gen));
    const RealFunction rg = RealFunction::step(edges, values);
    const double a = 0.8 + 0.8 * U(gen);
    const double b = std::min(2.0, a + 0.1 + 0.3 * U(gen));
    const IndexFunction alpha =
        IndexFunction::sinusoidal(0.5 * (a + b), 0.5 * (b - a), 0.5 + 2.5 * U(gen), a, b, 6.0 * U(gen));
    const RngStream stream = RngStream::from_seed(600 + k);
    const bool t = tail_bound_check(rg, alpha, lambdas, rmc, stream).pass;
    const bool m = moment_bound_check(rg, alpha, 0.5 * a, rmc, stream).pass;
    if (t && m) ++random_pass;
  }
  o.require(random_pass == 10, "randomized cases passing " + std::to_string(random_pass) + "/10");
  // Constants re-derived by direct quadrature of the defining integrals.
  double cgap = 0.0;
  for (double q : {0.7, 1.0, 1.5, 2.0}) {
    // (1/2) int_{-2}^{2} |theta|^q dtheta by the midpoint rule on 2e5 cells.
    double s = 0.0;
    const int cells = 200000;
    for (int i = 0; i < cells; ++i) s += std::pow(std::abs(-2.0 + 4.0 * (i + 0.5) / cells), q) * 4.0 / cells;
    cgap = std::max(cgap, rel(tail_constant_c1(q, q), 0.5 * s));
  }
  o.require(cgap <= 1e-6, "c1 re-derivation gap " + num(cgap));
  o.note("Cauchy/Gaussian oracles and bounds hold, c1/10 controls fail, randomized " + std::to_string(random_pass) +
         "/10, c1 re-derivation gap " + num(cgap));
  return o;
}

// ---------------------------------------------------------------- 7
Outcome localisability() {
  Outcome o;
  const std::vector<double> r_seq{1e-1, 1e-2, 1e-3, 1e-4};
  const std::vector<std::vector<double>> thetas{{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}, {1.0, -1.0}, {-0.5, 2.0}};
  const std::vector<double> ts{0.5, 1.0};

  double worst_exact = 0.0;
  for (const auto& [h, bp, bm] : std::vector<std::tuple<double, double, double>>{{0.7, 1.0, 0.0}, {0.5, 1.0, 0.5}}) {
    KernelParams p;
    p.h = h;
    p.b_plus = bp;
    p.b_minus = bm;
    const ProcessKernel k = make_kernel(KernelKind::lfmm, p, IndexFunction::constant(1.5));
    for (double u : {0.0, 0.3}) {
      const LocalFormSpec local = tangent_form(k, u);
      for (double r : {1.0, 1e-1, 1e-2, 1e-3, 1e-4}) {
        for (const auto& th : thetas) {
          worst_exact = std::max(worst_exact, std::abs(localized_cf(k, u, h, ts, th, r) - tangent_cf(local, ts, th)));
        }
      }
    }
  }
  o.require(worst_exact <= 1e-8, "LFMM self-similarity gap " + num(worst_exact));

  KernelParams levy;
  levy.weight = [](double x) { return 1.0 + 0.5 * std::sin(x); };
  levy.weight_bound = 1.5;
  KernelParams rou;
  rou.lambda = 0.1;
  const std::vector<std::pair<std::string, ProcessKernel>> kernels{
      {"levy", make_kernel(KernelKind::weighted_levy, levy, sinusoid(1.5, 0.3, 2.0))},
      {"rou", make_kernel(KernelKind::reverse_ou, rou, sinusoid(1.8, 0.1, 2.0))},
  };
  std::string finals;
  for (const auto& [name, k] : kernels) {
    const LogContinuityReport lc = log_continuity_diagnostic(k.alpha(), -2.0, 2.0, {1e-1, 1e-2, 1e-3, 1e-4});
    o.require(lc.plausibly_satisfied, name + " alpha log-continuity");
    for (double u : {0.0, 0.3}) {
      const LocalFormSpec local = tangent_form(k, u);
      const VerifyReport cond = localisability_condition_check(k, u, local.h_exponent, local, ts, r_seq);
      const VerifyReport cf = localize_cf_check(k, u, local.h_exponent, local, ts, thetas, r_seq);
      const std::string tag = name + " u=" + num(u);
      o.require(cond.pass && cond.provenance.at("strictly_decreasing") == "true", tag + " condition integral");
      o.require(cf.pass && cf.provenance.at("strictly_decreasing") == "true", tag + " CF deviation");
      double worst_cond = 0.0;
      for (const auto& s : cond.statistics) {
        if (s.name.find("final") != std::string::npos) worst_cond = std::max(worst_cond, s.value);
      }
      finals += (finals.empty() ? "" : ", ") + tag + " final " + num(worst_cond) + "/" + num(cf.statistics.back().value);

      const VerifyReport wrong = localisability_condition_check(k, u, local.h_exponent + 0.1, local, ts, r_seq);
      o.require(!wrong.pass, tag + " wrong-h control fails");
    }
  }
  o.note("LFMM scaled vs tangent CF gap " + num(worst_exact) + "; " + finals + " (condition/CF); wrong h fails");
  return o;
}

// ---------------------------------------------------------------- 8
Outcome tangent_measure() {
  Outcome o;
  const IndexFunction alpha = sinusoid(1.5, 0.3, 2.0);
  const std::vector<double> r_seq{1e-1, 1e-2, 1e-3, 1e-4};
  const std::vector<std::vector<RealFunction>> families{
      {RealFunction::indicator(0.0, 1.0)},
      {RealFunction::indicator(-1.0, 0.5), RealFunction::indicator(0.5, 2.0)},
      {RealFunction::indicator(0.0, 0.25, 2.0), RealFunction::indicator(0.5, 1.5, -1.0),
       RealFunction::indicator(-3.0, -2.0)},
  };
  double identity = 0.0;
  int passed = 0;
  int total = 0;
  for (double u : {0.0, 0.3}) {
    for (const auto& fs : families) {
      std::vector<std::vector<double>> ths;
      for (double s : {0.5, 1.0, 2.0}) {
        std::vector<double> th(fs.size());
        for (std::size_t j = 0; j < th.size(); ++j) th[j] = s * (j % 2 == 0 ? 1.0 : -0.7);
        ths.push_back(th);
      }
      ++total;
      if (measure_scaling_check(alpha, u, fs, ths, r_seq).pass) ++passed;
      // r = 1: the scaled measure is M shifted by u.
      std::vector<RealFunction> shifted;
      for (const auto& f : fs) {
        shifted.push_back(RealFunction::indicator(f.support().lo + u, f.support().hi + u, f(f.support().lo)));
      }
      for (const auto& th : ths) {
        identity = std::max(identity, std::abs(scaled_cf({fs, th, alpha}, u, 1.0) - cf_joint({shifted, th, alpha})));
      }
    }
  }
  o.require(passed == total, "measure_scaling_check " + std::to_string(passed) + "/" + std::to_string(total));
  o.require(identity <= 1e-9, "r = 1 identity gap " + num(identity));
  o.note("scaling checks " + std::to_string(passed) + "/" + std::to_string(total) + " at u in {0, 0.3}; r = 1 gap " +
         num(identity));
  return o;
}

// ---------------------------------------------------------------- 9
Outcome gates() {
  Outcome o;
  auto rejects = [](const std::function<void()>& f, const std::string& needle) {
    try {
      f();
    } catch (const ArgumentError& e) {
      return std::string(e.what()).find(needle) != std::string::npos;
    }
    return false;
  };
  KernelParams rp;
  const std::string rou_ineq = "1 < sqrt(b) < a";
  o.require(rejects([&] { make_kernel(KernelKind::reverse_ou, rp, IndexFunction::constant(1.5, 1.2, 1.8)); }, rou_ineq),
            "rou [1.2, 1.8] rejected");
  o.require(rejects([&] { make_kernel(KernelKind::reverse_ou, rp, IndexFunction::constant(0.95, 0.9, 0.99)); }, rou_ineq),
            "rou [0.9, 0.99] rejected");
  o.require(rejects([&] { make_kernel(KernelKind::reverse_ou, rp, IndexFunction::constant(1.0)); }, rou_ineq),
            "rou a = b = 1 rejected");
  bool accepted = true;
  try {
    make_kernel(KernelKind::reverse_ou, rp, IndexFunction::constant(1.6, 1.5, 1.9));
  } catch (const Error&) {
    accepted = false;
  }
  o.require(accepted, "rou [1.5, 1.9] accepted");

  const std::string lfmm_ineq = "1/a - 1/b < h < 1 + 1/b - 1/a";
  const IndexFunction ab = IndexFunction::constant(1.5, 1.2, 1.8);
  const double lo = 1.0 / 1.2 - 1.0 / 1.8;
  const double hi = 1.0 + 1.0 / 1.8 - 1.0 / 1.2;
  int gate_ok = 0;
  for (double h : {0.2, lo - 1e-9, hi + 1e-9, 0.75, 1.2}) {
    KernelParams p;
    p.h = h;
    if (rejects([&] { make_kernel(KernelKind::lfmm, p, ab); }, lfmm_ineq)) ++gate_ok;
  }
  for (double h : {lo + 1e-9, 0.5, hi - 1e-9}) {
    KernelParams p;
    p.h = h;
    try {
      make_kernel(KernelKind::lfmm, p, ab);
      ++gate_ok;
    } catch (const Error&) {
    }
  }
  o.require(gate_ok == 8, "lfmm gate decisions " + std::to_string(gate_ok) + "/8");
  o.note("reverse OU and LFMM gates decide " + std::to_string(gate_ok + 4) + " cases, messages cite the inequality");
  return o;
}

// ---------------------------------------------------------------- 10
int cli(const std::vector<std::string>& args) {
  std::vector<std::string> store{"multistable"};
  store.insert(store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : store) argv.push_back(s.data());
  std::ostringstream sink;
  auto* old = std::cout.rdbuf(sink.rdbuf());
  const int rc = run_cli(static_cast<int>(argv.size()), argv.data());
  std::cout.rdbuf(old);
  return rc;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome reproducibility() {
  namespace fs = std::filesystem;
  Outcome o;
  const fs::path root = fs::temp_directory_path() / "multistable_acceptance";
  fs::remove_all(root);
  auto commands = [](const std::string& dir, const std::string& seed) {
    return std::vector<std::vector<std::string>>{
        {"sample-path", "--process", "lfmm", "--h", "0.7", "--alpha", "const:1.5", "--t", "0:1:64", "--level", "10",
         "--seed", seed, "--samples", "2", "--dump-increments", "--out", dir + "/lfmm"},
        {"sample-path", "--process", "rou", "--lambda", "0.5", "--alpha", "sin:mid=1.8,amp=0.1,period=2", "--bounds",
         "1.7,1.9", "--t", "0:2:50", "--level", "9", "--seed", seed, "--out", dir + "/rou"},
        {"sample-path", "--process", "levy", "--alpha", "affine:1.2,0.3", "--bounds", "1.1,1.9", "--t", "-1:1:41",
         "--level", "10", "--seed", seed, "--out", dir + "/levy"},
        {"cf", "--alpha", "sin:mid=1.5,amp=0.3,period=2", "--bounds", "1.2,1.8", "--function", "ind:0,1", "--function",
         "exp:1,1", "--theta", "-3:3:31", "--out", dir + "/cf.csv"},
        {"verify", "--suite", "tails", "--alpha", "const:1.5", "--samples", "2000", "--seed", seed, "--out",
         dir + "/tails.json"},
        {"verify", "--suite", "localize", "--process", "rou", "--lambda", "0.1", "--alpha",
         "sin:mid=1.8,amp=0.1,period=2", "--bounds", "1.7,1.9", "--out", dir + "/localize.json"},
        {"localize", "--process", "levy", "--alpha", "sin:mid=1.5,amp=0.3,period=2", "--bounds", "1.2,1.8", "--out",
         dir + "/localize.csv"},
    };
  };
  for (const std::string run : {"a", "b"}) {
    for (const auto& args : commands((root / run).string(), "42")) {
      const int rc = cli(args);
      if (rc != 0) o.require(false, args[0] + " exited with " + std::to_string(rc));
    }
  }
  std::size_t files = 0;
  std::size_t identical = 0;
  for (const auto& entry : fs::recursive_directory_iterator(root / "a")) {
    if (!entry.is_regular_file()) continue;
    ++files;
    const fs::path other = root / "b" / fs::relative(entry.path(), root / "a");
    if (fs::exists(other) && slurp(entry.path()) == slurp(other)) ++identical;
  }
  o.require(files > 0 && identical == files, std::to_string(identical) + "/" + std::to_string(files) + " identical");

  for (const auto& args : commands((root / "c").string(), "43")) cli(args);
  const bool differs = slurp(root / "a/lfmm/path_0000.csv") != slurp(root / "c/lfmm/path_0000.csv");
  o.require(differs, "a different seed changes the path");
  o.note(std::to_string(identical) + "/" + std::to_string(files) + " output files bit-identical across reruns; seed 43 differs");
  fs::remove_all(root);
  return o;
}

}  // namespace

int main() {
  int failed = 0;
  failed += run(1, "norm oracle", 1.0, norm_oracle);
  failed += run(2, "stable sampler law", 30.0, stable_law);
  failed += run(3, "simulator vs joint CF", 60.0, simulator_cf);
  failed += run(4, "independent scattering and additivity", 120.0, scattering);
  failed += run(5, "fdd convergence over levels", 10.0, fdd_convergence);
  failed += run(6, "tail and moment bounds", 120.0, tail_moment);
  failed += run(7, "localisability", 120.0, localisability);
  failed += run(8, "tangent measure scaling", 30.0, tangent_measure);
  failed += run(9, "parameter gates", 1.0, gates);
  failed += run(10, "CLI reproducibility", 60.0, reproducibility);
  std::printf("%d of 10 criteria failed\n", failed);
  return failed;
}

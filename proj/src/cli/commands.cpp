#include <cstdio>
#include <iostream>

#include "multistable/cli.hpp"
#include "multistable/error.hpp"
#include "multistable/function_spaces.hpp"
#include "multistable/io.hpp"
#include "multistable/verify.hpp"

namespace multistable {

namespace {

const char* const kDefaultR = "0.1,0.01,0.001,0.0001";

double real_or(const Json& cfg, const std::string& key, double dflt) {
  return cfg.contains(key) ? cfg.at(key).get<double>() : dflt;
}

std::string text_or(const Json& cfg, const std::string& key, const std::string& dflt) {
  return cfg.contains(key) ? cfg.at(key).get<std::string>() : dflt;
}

std::uint64_t seed_of(const Json& cfg) { return cfg.contains("seed") ? cfg.at("seed").get<std::uint64_t>() : 0; }

int level_or(const Json& cfg, int dflt) {
  const long long v = cfg.contains("level") ? cfg.at("level").get<long long>() : dflt;
  if (v < 0 || v > 52) throw ArgumentError("level must lie in [0, 52]");
  return static_cast<int>(v);
}

std::size_t samples_or(const Json& cfg, std::size_t dflt) {
  return cfg.contains("samples") ? cfg.at("samples").get<std::size_t>() : dflt;
}

std::vector<double> grid_or(const Json& cfg, const std::string& key, const std::string& dflt) {
  if (!cfg.contains(key)) return parse_grid(dflt);
  const Json& v = cfg.at(key);
  return v.is_array() ? v.get<std::vector<double>>() : parse_grid(v.get<std::string>());
}

std::vector<double> list_or(const Json& cfg, const std::string& key, const std::string& dflt) {
  if (!cfg.contains(key)) return parse_list(dflt);
  const Json& v = cfg.at(key);
  return v.is_array() ? v.get<std::vector<double>>() : parse_list(v.get<std::string>());
}

IndexFunction alpha_of(const Json& cfg) {
  std::optional<std::pair<double, double>> bounds;
  if (cfg.contains("bounds")) {
    const Json& b = cfg.at("bounds");
    if (b.is_array()) {
      if (b.size() != 2) throw ArgumentError("bounds must hold two values");
      bounds = std::pair{b[0].get<double>(), b[1].get<double>()};
    } else {
      bounds = parse_bounds(b.get<std::string>());
    }
  }
  return alpha_from_json(cfg.contains("alpha") ? cfg.at("alpha") : Json("const:1.5"), bounds);
}

QuadratureSpec quad_of(const Json& cfg) {
  QuadratureSpec q;
  if (cfg.contains("quad_tol")) {
    q.abs_tol = q.rel_tol = cfg.at("quad_tol").get<double>();
    if (!(q.abs_tol > 0.0)) throw ArgumentError("--quad-tol must be positive");
  }
  q.validate();
  return q;
}

ProcessKernel kernel_of(const Json& cfg, const IndexFunction& alpha) {
  if (!cfg.contains("process")) throw ArgumentError("--process is required (levy, rou or lfmm)");
  KernelParams p;
  p.lambda = real_or(cfg, "lambda", 1.0);
  p.h = real_or(cfg, "h", 0.5);
  p.b_plus = real_or(cfg, "bplus", 1.0);
  p.b_minus = real_or(cfg, "bminus", 0.0);
  return make_kernel(kernel_kind_from_string(cfg.at("process").get<std::string>()), p, alpha);
}

std::vector<RealFunction> functions_of(const Json& cfg, const std::vector<std::string>& dflt) {
  std::vector<RealFunction> out;
  if (cfg.contains("function")) {
    const Json& f = cfg.at("function");
    if (f.is_array()) {
      for (const auto& item : f) out.push_back(function_from_json(item));
    } else {
      out.push_back(function_from_json(f));
    }
  } else {
    for (const auto& s : dflt) out.push_back(parse_function(s));
  }
  if (out.empty()) throw ArgumentError("at least one --function is required");
  return out;
}

std::vector<IntervalSet> sets_of(const Json& cfg) {
  const std::string text = text_or(cfg, "sets", "0:0.5,0.5:1");
  std::vector<IntervalSet> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto end = std::min(text.find(',', start), text.size());
    const std::string item = text.substr(start, end - start);
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw ArgumentError("sets must be lo:hi,lo:hi,..., got '" + text + "'");
    const double lo = std::stod(item.substr(0, colon));
    const double hi = std::stod(item.substr(colon + 1));
    if (!(lo < hi)) throw ArgumentError("each set needs lo < hi");
    out.emplace_back(std::vector<Interval>{{lo, hi}});
    start = end + 1;
  }
  return out;
}

// Unit vectors, their sum, and (for d >= 2) the alternating difference.
std::vector<std::vector<double>> theta_vectors(std::size_t d, const std::vector<double>& scales) {
  std::vector<std::vector<double>> dirs;
  for (std::size_t j = 0; j < d; ++j) {
    std::vector<double> e(d, 0.0);
    e[j] = 1.0;
    dirs.push_back(e);
  }
  if (d > 1) {
    dirs.emplace_back(d, 1.0);
    std::vector<double> alt(d);
    for (std::size_t j = 0; j < d; ++j) alt[j] = j % 2 == 0 ? 1.0 : -1.0;
    dirs.push_back(alt);
  }
  std::vector<std::vector<double>> out;
  for (double s : scales) {
    for (auto v : dirs) {
      for (double& x : v) x *= s;
      out.push_back(v);
    }
  }
  return out;
}

// The output location is not part of the experiment.
Json experiment(const Json& cfg) {
  Json e = cfg;
  e.erase("out");
  return e;
}

std::string hash_of(const Json& cfg) { return config_hash(experiment(cfg)); }

Json sidecar(const Json& cfg) {
  Json j;
  j["config"] = experiment(cfg);
  j["config_hash"] = hash_of(cfg);
  return j;
}

void absorb(VerifyReport& into, const VerifyReport& part) {
  for (const auto& s : part.statistics) into.add(part.check + ": " + s.name, s.value, s.threshold, s.pass);
  for (const auto& [k, v] : part.provenance) into.provenance[part.check + "." + k] = v;
  if (!part.note.empty()) into.note += (into.note.empty() ? "" : "; ") + part.note;
}

}  // namespace

int cmd_sample_path(const Json& cfg) {
  const IndexFunction alpha = alpha_of(cfg);
  const ProcessKernel kernel = kernel_of(cfg, alpha);
  const std::vector<double> times = grid_or(cfg, "t", "0:1:256");
  const int level = level_or(cfg, 12);
  const std::size_t n = samples_or(cfg, 1);
  const std::string out = text_or(cfg, "out", "paths");
  const bool dump = cfg.value("dump_increments", false);
  PathOptions opts;
  opts.quad = quad_of(cfg);
  const RngStream master = RngStream::from_seed(seed_of(cfg));

  Json meta = sidecar(cfg);
  meta["kernel"] = kernel.describe();
  meta["alpha"] = alpha.describe();
  meta["level"] = level;
  meta["seed"] = seed_of(cfg);
  meta["paths"] = Json::array();
  for (std::size_t i = 0; i < n; ++i) {
    const RngStream stream = derive_stream(master, kPathTag, static_cast<std::int64_t>(i));
    const PathSample path = sample_path(kernel, times, level, stream, opts);
    std::vector<std::vector<double>> rows;
    for (std::size_t k = 0; k < times.size(); ++k) rows.push_back({path.times[k], path.values[k]});
    char name[64];
    std::snprintf(name, sizeof name, "path_%04zu.csv", i);
    write_file_atomic(out + "/" + name, to_csv({"t", "value"}, rows));
    Json entry{{"file", name},
               {"window", {path.window_lo, path.window_hi}},
               {"residual_tail_mass", path.residual_tail_mass}};
    if (dump) {
      std::snprintf(name, sizeof name, "increments_%04zu.csv", i);
      const MeasureIncrements inc = simulate_increments(alpha, level, path.window_lo, path.window_hi, stream, opts.limits);
      write_file_atomic(out + "/" + name, increments_csv(inc));
      entry["increments"] = name;
    }
    meta["paths"].push_back(entry);
  }
  write_file_atomic(out + "/sample_path.json", meta.dump(2) + "\n");
  std::cout << "wrote " << n << " path(s) to " << out << " (config " << hash_of(cfg) << ")\n";
  return 0;
}

int cmd_cf(const Json& cfg) {
  const IndexFunction alpha = alpha_of(cfg);
  const QuadratureSpec quad = quad_of(cfg);
  const std::vector<double> thetas = grid_or(cfg, "theta", "-3:3:61");
  const std::string out = text_or(cfg, "out", "cf.csv");
  std::vector<std::vector<double>> rows;
  Json meta = sidecar(cfg);
  if (cfg.contains("process")) {
    const ProcessKernel kernel = kernel_of(cfg, alpha);
    const std::vector<double> times = grid_or(cfg, "t", "1:1:1");
    for (double th : thetas) {
      rows.push_back({th, marginal_cf(kernel, times, std::vector<double>(times.size(), th), quad)});
    }
    meta["kernel"] = kernel.describe();
    meta["times"] = times;
  } else {
    CfSpec spec;
    spec.functions = functions_of(cfg, {"ind:0,1"});
    spec.alpha = alpha;
    for (double th : thetas) {
      spec.thetas.assign(spec.functions.size(), th);
      rows.push_back({th, cf_joint(spec, quad)});
    }
  }
  meta["alpha"] = alpha.describe();
  write_file_atomic(out, to_csv({"theta", "cf"}, rows));
  write_file_atomic(out + ".json", meta.dump(2) + "\n");
  std::cout << "wrote " << rows.size() << " rows to " << out << " (config " << hash_of(cfg) << ")\n";
  return 0;
}

int cmd_norm(const Json& cfg) {
  const IndexFunction alpha = alpha_of(cfg);
  const QuadratureSpec quad = quad_of(cfg);
  const RealFunction f = functions_of(cfg, {"ind:0,1"}).front();
  std::cout << "luxemburg_norm " << format_double(luxemburg_norm(f, alpha, quad)) << '\n';
  if (cfg.contains("p")) std::cout << "norm_p " << format_double(norm_p(f, cfg.at("p").get<double>(), quad)) << '\n';
  std::cout << "config_hash " << hash_of(cfg) << '\n';
  return 0;
}

int cmd_localize(const Json& cfg) {
  const IndexFunction alpha = alpha_of(cfg);
  const ProcessKernel kernel = kernel_of(cfg, alpha);
  const QuadratureSpec quad = quad_of(cfg);
  const double u = real_or(cfg, "u", 0.3);
  const LocalFormSpec local = tangent_form(kernel, u);
  const double h = real_or(cfg, "h_local", local.h_exponent);
  const std::vector<double> r_seq = list_or(cfg, "r", kDefaultR);
  const std::vector<double> times = grid_or(cfg, "t", "0.25:1:4");
  const std::vector<double> thetas = grid_or(cfg, "theta", "0.5:2:4");
  const std::string out = text_or(cfg, "out", "localize.csv");
  std::vector<std::vector<double>> rows;
  for (double r : r_seq) {
    for (double t : times) {
      const double cond = localisability_condition_integral(kernel, u, h, local, t, r, quad);
      for (double th : thetas) {
        rows.push_back({r, t, th, localized_cf(kernel, u, h, {t}, {th}, r, quad), tangent_cf(local, {t}, {th}, quad),
                        cond});
      }
    }
  }
  Json meta = sidecar(cfg);
  meta["kernel"] = kernel.describe();
  meta["h_exponent"] = h;
  meta["frozen_alpha"] = local.frozen_alpha;
  write_file_atomic(out, to_csv({"r", "t", "theta", "localized_cf", "tangent_cf", "condition_integral"}, rows));
  write_file_atomic(out + ".json", meta.dump(2) + "\n");
  std::cout << "wrote " << rows.size() << " rows to " << out << " (config " << hash_of(cfg) << ")\n";
  return 0;
}

int cmd_verify(const Json& cfg) {
  const std::string suite = text_or(cfg, "suite", "");
  const IndexFunction alpha = alpha_of(cfg);
  const QuadratureSpec quad = quad_of(cfg);
  MonteCarloOptions mc;
  mc.level = level_or(cfg, 8);
  mc.n_paths = samples_or(cfg, 10000);
  mc.quad = quad;
  const RngStream stream = RngStream::from_seed(seed_of(cfg));
  const std::vector<double> r_seq = list_or(cfg, "r", kDefaultR);
  const double u = real_or(cfg, "u", 0.3);

  VerifyReport rep;
  if (suite == "independence") {
    rep = independence_check(alpha, sets_of(cfg), mc, stream);
  } else if (suite == "additivity") {
    const auto sets = sets_of(cfg);
    if (sets.size() != 2) throw ArgumentError("the additivity suite needs exactly two sets");
    rep = additivity_check(alpha, sets[0], sets[1], mc, stream);
  } else if (suite == "convergence") {
    std::vector<IndexFunction> seq;
    for (double lv : list_or(cfg, "levels", "2,4,6,8")) seq.push_back(alpha.dyadic(static_cast<int>(lv)));
    const auto fs = functions_of(cfg, {"ind:0,0.5", "ind:0.5,1"});
    std::vector<std::vector<double>> grid;
    for (double th : grid_or(cfg, "theta", "-2:2:21")) grid.emplace_back(fs.size(), th);
    rep = cf_convergence_check(seq, alpha, fs, grid, quad);
  } else if (suite == "tails") {
    rep = tail_bound_check(functions_of(cfg, {"ind:0,1"}).front(), alpha, list_or(cfg, "lambdas", "1,2,4,8"), mc,
                           stream);
  } else if (suite == "moments") {
    rep = moment_bound_check(functions_of(cfg, {"ind:0,1"}).front(), alpha, real_or(cfg, "p", 0.5 * alpha.lower()),
                             mc, stream);
  } else if (suite == "localize") {
    const ProcessKernel kernel = kernel_of(cfg, alpha);
    const LocalFormSpec local = tangent_form(kernel, u);
    const double h = real_or(cfg, "h_local", local.h_exponent);
    const std::vector<double> times = grid_or(cfg, "t", "0.5:1:2");
    const auto thetas = theta_vectors(times.size(), grid_or(cfg, "theta", "1:1:1"));
    rep.check = "localize";
    absorb(rep, localisability_condition_check(kernel, u, h, local, times, r_seq, quad));
    absorb(rep, localize_cf_check(kernel, u, h, local, times, thetas, r_seq, quad));
    rep.finalize();
  } else if (suite == "scaling") {
    const auto fs = functions_of(cfg, {"ind:0,0.5", "ind:0.5,1"});
    rep = measure_scaling_check(alpha, u, fs, theta_vectors(fs.size(), grid_or(cfg, "theta", "1:1:1")), r_seq, quad);
  } else if (suite == "strong") {
    const ProcessKernel kernel = kernel_of(cfg, alpha);
    const double h = real_or(cfg, "h_local", tangent_form(kernel, u).h_exponent);
    const double inv_a = 1.0 / alpha.lower();
    if (!cfg.contains("eta") && !(h > inv_a)) {
      throw ArgumentError("no default eta: the strong condition needs 1/a < eta < h, but h = " + std::to_string(h) +
                          " <= 1/a = " + std::to_string(inv_a) + "; pass --eta explicitly");
    }
    const double eta = real_or(cfg, "eta", 0.5 * (inv_a + h));
    rep = strong_localisability_diagnostic(kernel, u, h, eta, r_seq, quad);
  } else {
    throw ArgumentError("unknown suite '" + suite +
                        "' (independence, additivity, convergence, tails, moments, localize, scaling, strong)");
  }
  rep.seed = seed_of(cfg);
  const std::string out = text_or(cfg, "out", "report.json");
  write_file_atomic(out, rep.to_json(hash_of(cfg)) + "\n");
  const bool expect_fail = cfg.value("expect_fail", false);
  std::cout << rep.check << (rep.pass ? " passed" : " failed") << (expect_fail ? " (failure expected)" : "")
            << "; report in " << out << '\n';
  return rep.pass != expect_fail ? 0 : 1;
}

}  // namespace multistable

#include "multistable/cli.hpp"

#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "multistable/error.hpp"

namespace multistable {

namespace {

enum class Kind { text, real, integer, unsigned_integer };

struct Flag {
  const char* name;
  Kind kind;
  const char* help;
};

const Flag kFlags[] = {
    {"alpha", Kind::text, "index function, e.g. const:1.5, affine:1.2,0.3, sin:mid=1.5,amp=0.3,period=2, table:f.json"},
    {"bounds", Kind::text, "a,b bounds of the index function (required for non-constant families)"},
    {"process", Kind::text, "levy | rou | lfmm"},
    {"h", Kind::real, "lfmm self-similarity exponent"},
    {"bplus", Kind::real, "lfmm coefficient b+"},
    {"bminus", Kind::real, "lfmm coefficient b-"},
    {"lambda", Kind::real, "reverse OU rate"},
    {"t", Kind::text, "times lo:hi:n"},
    {"level", Kind::integer, "dyadic level n (cells of width 2^-n)"},
    {"seed", Kind::unsigned_integer, "64-bit seed"},
    {"samples", Kind::unsigned_integer, "number of paths / Monte Carlo samples"},
    {"out", Kind::text, "output file or directory"},
    {"quad-tol", Kind::real, "quadrature absolute and relative tolerance"},
    {"theta", Kind::text, "theta grid lo:hi:n"},
    {"suite", Kind::text, "independence | additivity | convergence | tails | moments | localize | scaling | strong"},
    {"u", Kind::real, "base point of the localisation"},
    {"r", Kind::text, "comma separated, strictly decreasing scales in (0, 1]"},
    {"sets", Kind::text, "disjoint intervals lo:hi,lo:hi,..."},
    {"lambdas", Kind::text, "comma separated tail thresholds"},
    {"p", Kind::real, "moment order / norm exponent"},
    {"eta", Kind::real, "Holder exponent of the strong localisability diagnostic"},
    {"h-local", Kind::real, "override the localisation exponent"},
};

std::string key_of(const std::string& flag) {
  std::string k = flag;
  for (char& c : k) {
    if (c == '-') c = '_';
  }
  return k;
}

struct Parsed {
  std::map<std::string, std::string> values;
  std::vector<std::string> functions;
  std::string config_file;
  bool expect_fail = false;
  bool dump_increments = false;
};

CLI::App* add_command(CLI::App& app, Parsed& parsed, const std::string& name, const std::string& help) {
  CLI::App* sub = app.add_subcommand(name, help);
  sub->set_help_flag("--help", "print this help and exit");
  sub->add_option("--config", parsed.config_file, "JSON config; flags override its keys");
  for (const Flag& f : kFlags) sub->add_option(std::string("--") + f.name, parsed.values[f.name], f.help);
  sub->add_option("--function", parsed.functions, "real function, e.g. ind:0,1 or exp:1 (repeatable)");
  sub->add_flag("--expect-fail", parsed.expect_fail, "negative control: succeed when the suite fails");
  sub->add_flag("--dump-increments", parsed.dump_increments, "also write the increments of each path as CSV");
  return sub;
}

double to_real(const std::string& name, const std::string& s) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw ArgumentError("--" + name + " expects a number, got '" + s + "'");
}

Json merge(const CLI::App& sub, const Parsed& parsed) {
  Json cfg = parsed.config_file.empty() ? Json::object() : read_json_file(parsed.config_file);
  if (!cfg.is_object()) throw ArgumentError("config file must hold a JSON object");
  cfg["command"] = sub.get_name();
  for (const Flag& f : kFlags) {
    if (sub.count(std::string("--") + f.name) == 0) continue;
    const std::string& v = parsed.values.at(f.name);
    const std::string key = key_of(f.name);
    switch (f.kind) {
      case Kind::text:
        cfg[key] = v;
        break;
      case Kind::real:
        cfg[key] = to_real(f.name, v);
        break;
      case Kind::integer: {
        const double d = to_real(f.name, v);
        if (d != static_cast<double>(static_cast<long long>(d))) throw ArgumentError("--" + std::string(f.name) + " expects an integer");
        cfg[key] = static_cast<long long>(d);
        break;
      }
      case Kind::unsigned_integer: {
        try {
          std::size_t used = 0;
          const unsigned long long u = std::stoull(v, &used, 0);
          if (used != v.size() || v.front() == '-') throw std::invalid_argument(v);
          cfg[key] = static_cast<std::uint64_t>(u);
        } catch (const std::exception&) {
          throw ArgumentError("--" + std::string(f.name) + " expects a non-negative integer, got '" + v + "'");
        }
        break;
      }
    }
  }
  if (sub.count("--function") > 0) cfg["function"] = parsed.functions;
  if (parsed.expect_fail) cfg["expect_fail"] = true;
  if (parsed.dump_increments) cfg["dump_increments"] = true;
  return cfg;
}

}  // namespace

int run_cli(int argc, char** argv) {
  CLI::App app{"Simulation and verification of multistable random measures and processes"};
  app.set_help_flag("--help", "print this help and exit");
  app.require_subcommand(1);
  Parsed parsed;
  const std::map<std::string, int (*)(const Json&)> commands{
      {"sample-path", cmd_sample_path}, {"cf", cmd_cf},       {"verify", cmd_verify},
      {"norm", cmd_norm},               {"localize", cmd_localize},
  };
  std::map<std::string, CLI::App*> subs;
  subs["sample-path"] = add_command(app, parsed, "sample-path", "simulate process paths (CSV per path + JSON sidecar)");
  subs["cf"] = add_command(app, parsed, "cf", "evaluate characteristic functions on a theta grid");
  subs["verify"] = add_command(app, parsed, "verify", "run a verification suite and write its report");
  subs["norm"] = add_command(app, parsed, "norm", "print the variable-exponent norm of a function");
  subs["localize"] = add_command(app, parsed, "localize", "tabulate localized and tangent characteristic functions over r");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    for (const auto& [name, sub] : subs) {
      if (sub->parsed()) return commands.at(name)(merge(*sub, parsed));
    }
    return 2;
  } catch (const ResourceError& e) {
    std::cerr << "resource limit: " << e.what() << '\n';
    return 3;
  } catch (const NumericError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return 4;
  } catch (const Error& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return 2;
  } catch (const Json::exception& e) {
    std::cerr << "invalid config: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace multistable

#include "multistable/config.hpp"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "multistable/error.hpp"

namespace multistable {

namespace {

double to_real(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ArgumentError("expected a number, got '" + s + "'");
  }
  if (used != s.size()) throw ArgumentError("expected a number, got '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream is(s);
  while (std::getline(is, cur, sep)) out.push_back(cur);
  if (!s.empty() && s.back() == sep) out.emplace_back();
  return out;
}

std::pair<std::string, std::string> head_tail(const std::string& text) {
  const auto pos = text.find(':');
  if (pos == std::string::npos) throw ArgumentError("expected 'family:parameters', got '" + text + "'");
  return {text.substr(0, pos), text.substr(pos + 1)};
}

std::map<std::string, double> keyed(const std::string& body) {
  std::map<std::string, double> out;
  for (const auto& item : split(body, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw ArgumentError("expected key=value, got '" + item + "'");
    out[item.substr(0, eq)] = to_real(item.substr(eq + 1));
  }
  return out;
}

std::pair<double, double> need(std::optional<std::pair<double, double>> bounds, const std::string& family) {
  if (!bounds) throw ArgumentError("index family '" + family + "' needs bounds a,b");
  return *bounds;
}

double get(const std::map<std::string, double>& m, const std::string& key) {
  const auto it = m.find(key);
  if (it == m.end()) throw ArgumentError("missing parameter '" + key + "'");
  return it->second;
}

std::vector<double> reals(const Json& j, const std::string& key) {
  if (!j.contains(key) || !j.at(key).is_array()) throw ArgumentError("missing array '" + key + "'");
  return j.at(key).get<std::vector<double>>();
}

IndexFunction tabulated_from(const Json& j, std::pair<double, double> ab) {
  return IndexFunction::tabulated(reals(j, "xs"), reals(j, "alphas"), ab.first, ab.second);
}

}  // namespace

std::pair<double, double> parse_bounds(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() != 2) throw ArgumentError("bounds must be 'a,b', got '" + text + "'");
  const double a = to_real(parts[0]);
  const double b = to_real(parts[1]);
  if (!(a <= b)) throw ArgumentError("bounds must satisfy a <= b, got '" + text + "'");
  return {a, b};
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& s : split(text, ',')) out.push_back(to_real(s));
  if (out.empty()) throw ArgumentError("empty list");
  return out;
}

std::vector<double> parse_grid(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw ArgumentError("grid must be 'lo:hi:n', got '" + text + "'");
  const double lo = to_real(parts[0]);
  const double hi = to_real(parts[1]);
  const double nd = to_real(parts[2]);
  if (!(nd >= 1.0) || nd != static_cast<double>(static_cast<long>(nd))) {
    throw ArgumentError("grid point count must be a positive integer");
  }
  const auto n = static_cast<std::size_t>(nd);
  if (n == 1) return {lo};
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  out.back() = hi;
  return out;
}

IndexFunction parse_alpha(const std::string& text, std::optional<std::pair<double, double>> bounds) {
  const auto [family, body] = head_tail(text);
  if (family == "const") {
    const double v = to_real(body);
    if (bounds) return IndexFunction::constant(v, bounds->first, bounds->second);
    return IndexFunction::constant(v);
  }
  if (family == "affine") {
    const auto p = parse_list(body);
    if (p.size() != 2) throw ArgumentError("affine needs intercept,slope");
    const auto ab = need(bounds, family);
    return IndexFunction::affine_clamped(p[0], p[1], ab.first, ab.second);
  }
  if (family == "sin") {
    const auto m = keyed(body);
    const auto ab = need(bounds, family);
    const double phase = m.count("phase") ? m.at("phase") : 0.0;
    return IndexFunction::sinusoidal(get(m, "mid"), get(m, "amp"), get(m, "period"), ab.first, ab.second, phase);
  }
  if (family == "pw") {
    const auto p = parse_list(body);
    if (p.size() % 2 == 0) throw ArgumentError("pw needs v0,e1,v1,...,ek,vk");
    std::vector<double> edges;
    std::vector<double> values{p[0]};
    for (std::size_t i = 1; i + 1 < p.size(); i += 2) {
      edges.push_back(p[i]);
      values.push_back(p[i + 1]);
    }
    const auto ab = need(bounds, family);
    return IndexFunction::piecewise_constant(edges, values, ab.first, ab.second);
  }
  if (family == "table") {
    const Json j = read_json_file(body);
    std::optional<std::pair<double, double>> ab = bounds;
    if (!ab && j.contains("a") && j.contains("b")) ab = std::pair{j.at("a").get<double>(), j.at("b").get<double>()};
    return tabulated_from(j, need(ab, family));
  }
  throw ArgumentError("unknown index family '" + family + "'");
}

IndexFunction alpha_from_json(const Json& j, std::optional<std::pair<double, double>> bounds) {
  if (j.is_string()) return parse_alpha(j.get<std::string>(), bounds);
  if (!j.is_object() || !j.contains("family")) throw ArgumentError("index config needs a 'family'");
  if (j.contains("a") && j.contains("b")) bounds = std::pair{j.at("a").get<double>(), j.at("b").get<double>()};
  const std::string family = j.at("family").get<std::string>();
  const Json params = j.value("params", Json::object());
  auto p = [&](const std::string& key) {
    if (!params.contains(key)) throw ArgumentError("index family '" + family + "' needs parameter '" + key + "'");
    return params.at(key).get<double>();
  };
  if (family == "constant") {
    if (bounds) return IndexFunction::constant(p("value"), bounds->first, bounds->second);
    return IndexFunction::constant(p("value"));
  }
  const auto ab = need(bounds, family);
  if (family == "affine_clamped" || family == "affine") {
    return IndexFunction::affine_clamped(p("intercept"), p("slope"), ab.first, ab.second);
  }
  if (family == "sinusoidal") {
    return IndexFunction::sinusoidal(p("mid"), p("amp"), p("period"), ab.first, ab.second, params.value("phase", 0.0));
  }
  if (family == "piecewise_constant") {
    return IndexFunction::piecewise_constant(reals(params, "edges"), reals(params, "values"), ab.first, ab.second);
  }
  if (family == "tabulated") return tabulated_from(j.contains("xs") ? j : params, ab);
  throw ArgumentError("unknown index family '" + family + "'");
}

RealFunction parse_function(const std::string& text) {
  const auto [family, body] = head_tail(text);
  if (family == "step") {
    const auto parts = split(body, '/');
    if (parts.size() != 2) throw ArgumentError("step needs edges/values");
    return RealFunction::step(parse_list(parts[0]), parse_list(parts[1]));
  }
  const auto p = parse_list(body);
  auto arity = [&](std::size_t lo, std::size_t hi) {
    if (p.size() < lo || p.size() > hi) throw ArgumentError("wrong number of parameters for '" + family + "'");
  };
  if (family == "ind") {
    arity(2, 3);
    return RealFunction::indicator(p[0], p[1], p.size() > 2 ? p[2] : 1.0);
  }
  if (family == "exp") {
    arity(1, 3);
    return RealFunction::exponential(p[0], p.size() > 1 ? p[1] : 0.0, p.size() > 2 ? p[2] : 1.0);
  }
  if (family == "pow") {
    arity(4, 5);
    return RealFunction::power(p[0], p[1], p[2], p[3], p.size() > 4 ? p[4] : 1.0);
  }
  throw ArgumentError("unknown function family '" + family + "'");
}

RealFunction function_from_json(const Json& j) {
  if (j.is_string()) return parse_function(j.get<std::string>());
  if (!j.is_object() || !j.contains("family")) throw ArgumentError("function config needs a 'family'");
  const std::string family = j.at("family").get<std::string>();
  const Json params = j.value("params", Json::object());
  auto p = [&](const std::string& key, std::optional<double> dflt = {}) {
    if (params.contains(key)) return params.at(key).get<double>();
    if (dflt) return *dflt;
    throw ArgumentError("function family '" + family + "' needs parameter '" + key + "'");
  };
  if (family == "indicator") return RealFunction::indicator(p("lo"), p("hi"), p("scale", 1.0));
  if (family == "exponential") return RealFunction::exponential(p("rate"), p("start", 0.0), p("scale", 1.0));
  if (family == "power") return RealFunction::power(p("lo"), p("hi"), p("center"), p("exponent"), p("scale", 1.0));
  if (family == "step") return RealFunction::step(reals(params, "edges"), reals(params, "values"));
  throw ArgumentError("unknown function family '" + family + "'");
}

std::string config_hash(const Json& config) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : config.dump()) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ArgumentError("malformed JSON in " + path + ": " + e.what());
  }
}

}  // namespace multistable

#include "multistable/report.hpp"

#include <algorithm>
#include <cmath>

#include <json.hpp>

namespace multistable {

void VerifyReport::add_upper(const std::string& name, double value, double threshold) {
  add(name, value, threshold, value <= threshold);
}

void VerifyReport::add_lower(const std::string& name, double value, double threshold) {
  add(name, value, threshold, value >= threshold);
}

void VerifyReport::add(const std::string& name, double value, double threshold, bool ok) {
  statistics.push_back({name, value, threshold, ok && !std::isnan(value)});
}

void VerifyReport::finalize() {
  pass = !statistics.empty() &&
         std::all_of(statistics.begin(), statistics.end(), [](const Statistic& s) { return s.pass; });
}

namespace {

nlohmann::json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

}  // namespace

std::string VerifyReport::to_json(const std::string& config_hash) const {
  nlohmann::json j;
  j["check"] = check;
  auto names = nlohmann::json::array();
  auto values = nlohmann::json::array();
  auto thresholds = nlohmann::json::array();
  auto passes = nlohmann::json::array();
  for (const auto& s : statistics) {
    names.push_back(s.name);
    values.push_back(number(s.value));
    thresholds.push_back(number(s.threshold));
    passes.push_back(s.pass);
  }
  j["statistic_names"] = names;
  j["statistics"] = values;
  j["thresholds"] = thresholds;
  j["statistic_pass"] = passes;
  j["pass"] = pass;
  j["seed"] = seed ? nlohmann::json(*seed) : nlohmann::json(nullptr);
  j["config_hash"] = config_hash;
  j["provenance"] = provenance;
  if (!note.empty()) j["note"] = note;
  return j.dump(2);
}

}  // namespace multistable

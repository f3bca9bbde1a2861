#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace multistable {

/// One measured quantity and the bound it is held to.
struct Statistic {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool pass = false;
};

/// Outcome of a check. `pass` is true iff every statistic passes.
struct VerifyReport {
  std::string check;
  std::vector<Statistic> statistics;
  bool pass = false;
  std::optional<std::uint64_t> seed;
  /// Inputs worth recording (levels, grids, sample counts), as text.
  std::map<std::string, std::string> provenance;
  std::string note;

  /// Adds a statistic that passes when value <= threshold.
  void add_upper(const std::string& name, double value, double threshold);
  /// Adds a statistic that passes when value >= threshold.
  void add_lower(const std::string& name, double value, double threshold);
  void add(const std::string& name, double value, double threshold, bool pass);
  /// Recomputes `pass` from the statistics (false when there are none).
  void finalize();

  /// {check, statistics: [...], thresholds: [...], pass, seed, config_hash, ...}
  std::string to_json(const std::string& config_hash = {}) const;
};

}  // namespace multistable

#pragma once

#include <string>
#include <vector>

#include "multistable/multistable.hpp"

namespace multistable {

/// Writes `content` to a temporary file next to `path`, then renames it into
/// place. Throws ResourceError on I/O failure.
void write_file_atomic(const std::string& path, const std::string& content);

/// Shortest decimal with 17 significant digits, '.' separator, no locale.
std::string format_double(double v);

/// CSV with a header line and one row per entry of `rows`.
std::string to_csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows);

/// Columns level, cell_index, x_left, alpha_used, draw.
std::string increments_csv(const MeasureIncrements& inc);

}  // namespace multistable

#include "multistable/io.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "multistable/error.hpp"

namespace multistable {

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) {
    std::error_code ec;
    fs::create_directories(target.parent_path(), ec);
    if (ec) throw ResourceError("cannot create directory " + target.parent_path().string() + ": " + ec.message());
  }
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ResourceError("cannot open " + tmp.string() + " for writing");
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) throw ResourceError("write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) throw ResourceError("cannot rename " + tmp.string() + " to " + path + ": " + ec.message());
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

std::string to_csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) out += (i ? "," : "") + header[i];
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_double(row[i]);
    }
    out += '\n';
  }
  return out;
}

std::string increments_csv(const MeasureIncrements& inc) {
  std::string out = "level,cell_index,x_left,alpha_used,draw\n";
  for (std::size_t k = 0; k < inc.size(); ++k) {
    out += std::to_string(inc.level) + ',' + std::to_string(inc.first_cell + static_cast<std::int64_t>(k)) + ',' +
           format_double(inc.x_left(k)) + ',' + format_double(inc.alpha_used[k]) + ',' + format_double(inc.draws[k]) +
           '\n';
  }
  return out;
}

}  // namespace multistable

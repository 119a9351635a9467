#pragma once

#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace tau3corr::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

// Shortest round-trip decimal, independent of the locale.
inline std::string fmt(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

inline std::string fmt(std::int64_t x) { return std::to_string(x); }

// Writes to a sibling temporary and renames it into place, so an interrupted
// run never leaves a partial file under the final name.
inline void write_atomically(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    out << content;
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

  void add_row(std::vector<std::string> cells) {
    if (cells.size() != header_.size()) throw std::logic_error("CsvTable: row width mismatch");
    rows_.push_back(std::move(cells));
  }

  // Leading comment lines carry the format version and the run config.
  std::string render(const Json& config) const {
    std::string s = "# format_version: " + std::to_string(kFormatVersion) + "\n# config: " + config.dump() + "\n";
    append_line(s, header_);
    for (const auto& r : rows_) append_line(s, r);
    return s;
  }

 private:
  static void append_line(std::string& s, const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) s += ',';
      s += cells[i];
    }
    s += '\n';
  }

  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

inline Json document(const Json& config, const char* kind) {
  Json j;
  j["format_version"] = kFormatVersion;
  j["kind"] = kind;
  j["config"] = config;
  return j;
}

}  // namespace tau3corr::cli

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "output.hpp"

namespace tau3corr::cli {

using Cell = std::variant<std::monostate, std::int64_t, double, bool, std::string>;

struct Table {
  Table(std::string name_, std::vector<std::string> columns_) : name(std::move(name_)), columns(std::move(columns_)) {}

  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add(std::vector<Cell> row) {
    if (row.size() != columns.size()) throw std::logic_error("Table " + name + ": row width mismatch");
    rows.push_back(std::move(row));
  }
};

template <class T>
Cell opt(const std::optional<T>& v) {
  if (v) return Cell(*v);
  return Cell{};
}

inline Json to_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> Json {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, std::monostate>) {
          return nullptr;
        } else {
          return v;
        }
      },
      c);
}

inline std::string to_csv(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using V = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<V, std::monostate>) {
          return "";
        } else if constexpr (std::is_same_v<V, bool>) {
          return v ? "true" : "false";
        } else if constexpr (std::is_same_v<V, std::string>) {
          // Quote only when needed.
          if (v.find_first_of(",\"\n") == std::string::npos) return v;
          std::string q = "\"";
          for (char ch : v) {
            if (ch == '"') q += '"';
            q += ch;
          }
          return q + "\"";
        } else {
          return fmt(v);
        }
      },
      c);
}

/// Everything one command emits: a summary object and named tables.
struct Report {
  Report() = default;
  explicit Report(std::string kind_) : kind(std::move(kind_)) {}

  std::string kind;
  Json summary = Json::object();
  std::vector<Table> tables;
};

enum class Format { csv, json };

/// JSON: <out>/<kind>.json holding everything. CSV: <out>/<kind>_summary.csv
/// (key,value) plus <out>/<kind>_<table>.csv per table.
inline std::vector<std::filesystem::path> emit(const Report& r, const Json& config, Format format,
                                               const std::filesystem::path& out_dir) {
  std::vector<std::filesystem::path> written;
  if (format == Format::json) {
    Json doc = document(config, r.kind.c_str());
    doc["summary"] = r.summary;
    Json tables = Json::object();
    for (const Table& t : r.tables) {
      Json rows = Json::array();
      for (const auto& row : t.rows) {
        Json obj = Json::object();
        for (std::size_t i = 0; i < t.columns.size(); ++i) obj[t.columns[i]] = to_json(row[i]);
        rows.push_back(std::move(obj));
      }
      tables[t.name] = std::move(rows);
    }
    doc["tables"] = std::move(tables);
    const auto path = out_dir / (r.kind + ".json");
    write_atomically(path, doc.dump(2) + "\n");
    written.push_back(path);
    return written;
  }
  CsvTable summary({"key", "value"});
  for (const auto& [key, value] : r.summary.items()) {
    std::string v;
    if (value.is_null()) {
      v = "";
    } else if (value.is_number_float()) {
      v = fmt(value.get<double>());
    } else if (value.is_string()) {
      v = to_csv(Cell(value.get<std::string>()));
    } else {
      v = to_csv(Cell(value.dump()));
    }
    summary.add_row({key, v});
  }
  const auto summary_path = out_dir / (r.kind + "_summary.csv");
  write_atomically(summary_path, summary.render(config));
  written.push_back(summary_path);
  for (const Table& t : r.tables) {
    CsvTable csv(t.columns);
    for (const auto& row : t.rows) {
      std::vector<std::string> cells;
      cells.reserve(row.size());
      for (const Cell& c : row) cells.push_back(to_csv(c));
      csv.add_row(std::move(cells));
    }
    const auto path = out_dir / (r.kind + "_" + t.name + ".csv");
    write_atomically(path, csv.render(config));
    written.push_back(path);
  }
  return written;
}

}  // namespace tau3corr::cli

#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace edscorr::harness {

// Empty cells print as an empty CSV field and as JSON null.
using Cell = std::variant<std::monostate, std::string, std::int64_t, std::uint64_t,
                          double, bool>;

inline constexpr int kSchemaVersion = 1;

// A fixed-column result table with ordered metadata. Rendering is
// deterministic: doubles use the shortest round-trip representation.
struct Table {
  std::string name;
  std::vector<std::pair<std::string, Cell>> meta;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  void add_meta(std::string key, Cell value) { meta.emplace_back(std::move(key), std::move(value)); }
  // Throws std::logic_error when the width differs from the column count.
  void add_row(std::vector<Cell> row);
};

std::string format_cell(const Cell& c);
// RFC 4180 quoting: fields with a comma, quote, CR or LF are wrapped in
// quotes and embedded quotes doubled.
std::string csv_escape(const std::string& field);

// "# schema=N", then "# key=value" metadata lines, the header and the rows.
void write_csv(std::ostream& os, const Table& t);
// {"schema": N, "table": name, "meta": {...}, "columns": [...], "rows": [{...}]}
void write_json(std::ostream& os, const Table& t);

// Parses output of write_csv (used by resumable sweeps and tests).
Table read_csv(std::istream& is);

}  // namespace edscorr::harness

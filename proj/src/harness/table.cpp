#include "edscorr/harness/table.hpp"

#include <algorithm>

#include <charconv>
#include <cmath>
#include <istream>
#include <stdexcept>

#include <json.hpp>

namespace edscorr::harness {

namespace {

std::string fmt_double(double v) {
  if (!std::isfinite(v)) return "";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

nlohmann::ordered_json to_json(const Cell& c) {
  return std::visit(
      [](const auto& v) -> nlohmann::ordered_json {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return nullptr;
        } else if constexpr (std::is_same_v<T, double>) {
          if (!std::isfinite(v)) return nullptr;
          return v;
        } else {
          return v;
        }
      },
      c);
}

// Splits one CSV record; quoted fields may not span lines in our output.
std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw std::logic_error("row width " + std::to_string(row.size()) +
                           " does not match " + std::to_string(columns.size()) +
                           " columns in table " + name);
  }
  rows.push_back(std::move(row));
}

std::string format_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return "";
        } else if constexpr (std::is_same_v<T, std::string>) {
          return v;
        } else if constexpr (std::is_same_v<T, double>) {
          return fmt_double(v);
        } else if constexpr (std::is_same_v<T, bool>) {
          return v ? "true" : "false";
        } else {
          return std::to_string(v);
        }
      },
      c);
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

void write_csv(std::ostream& os, const Table& t) {
  os << "# schema=" << kSchemaVersion << "\n";
  if (!t.name.empty()) os << "# table=" << t.name << "\n";
  for (const auto& [k, v] : t.meta) os << "# " << k << "=" << format_cell(v) << "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) {
    os << (i ? "," : "") << csv_escape(t.columns[i]);
  }
  os << "\n";
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      os << (i ? "," : "") << csv_escape(format_cell(row[i]));
    }
    os << "\n";
  }
}

void write_json(std::ostream& os, const Table& t) {
  nlohmann::ordered_json j;
  j["schema"] = kSchemaVersion;
  j["table"] = t.name;
  nlohmann::ordered_json meta = nlohmann::ordered_json::object();
  for (const auto& [k, v] : t.meta) meta[k] = to_json(v);
  j["meta"] = meta;
  j["columns"] = t.columns;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) r[t.columns[i]] = to_json(row[i]);
    rows.push_back(r);
  }
  j["rows"] = rows;
  os << j.dump(2) << "\n";
}

Table read_csv(std::istream& is) {
  Table t;
  std::string line;
  bool header = false;
  bool schema = false;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (header) {
      // A record continues while a quoted field is open.
      std::string more;
      while (std::count(line.begin(), line.end(), '"') % 2 == 1 && std::getline(is, more)) {
        if (!more.empty() && more.back() == '\r') more.pop_back();
        line += '\n';
        line += more;
      }
    }
    if (!header && line.rfind("# ", 0) == 0) {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = line.substr(2, eq - 2);
      const std::string value = line.substr(eq + 1);
      if (key == "schema") {
        if (value != std::to_string(kSchemaVersion)) {
          throw std::runtime_error("unsupported CSV schema " + value);
        }
        schema = true;
      } else if (key == "table") {
        t.name = value;
      } else {
        t.meta.emplace_back(key, value);
      }
      continue;
    }
    if (!header) {
      t.columns = split_csv(line);
      header = true;
      continue;
    }
    std::vector<Cell> row;
    for (auto& f : split_csv(line)) {
      row.emplace_back(f.empty() ? Cell{} : Cell{f});
    }
    t.add_row(std::move(row));
  }
  if (!schema) throw std::runtime_error("CSV is missing the schema line");
  if (!header) throw std::runtime_error("CSV is missing the header row");
  return t;
}

}  // namespace edscorr::harness

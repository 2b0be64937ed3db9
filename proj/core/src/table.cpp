#include "kemeny/table.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "kemeny/error.hpp"

namespace kemeny {

std::size_t Table::column_index(std::string_view name) const {
  auto it = std::find(columns.begin(), columns.end(), name);
  if (it == columns.end()) throw std::out_of_range("no column named " + std::string(name));
  return static_cast<std::size_t>(it - columns.begin());
}

const Cell& Table::at(std::size_t row, std::string_view column) const {
  return rows.at(row).at(column_index(column));
}

double Table::number(std::size_t row, std::string_view column) const {
  const Cell& c = at(row, column);
  if (const auto* d = std::get_if<double>(&c)) return *d;
  if (const auto* i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
  return std::numeric_limits<double>::quiet_NaN();
}

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw std::invalid_argument(fmt::format("row has {} cells, table has {} columns", row.size(), columns.size()));
  }
  rows.push_back(std::move(row));
}

namespace {

std::string csv_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  std::string s = fmt::format("{:.17g}", v);
  if (s.find_first_of(".e") == std::string::npos) s += ".0";
  return s;
}

std::string csv_quote(std::string_view s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string csv_cell(const Cell& c) {
  struct Visitor {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return csv_double(v); }
    std::string operator()(const std::string& v) const { return csv_quote(v); }
  };
  return std::visit(Visitor{}, c);
}

struct Field {
  std::string text;
  bool quoted = false;
};

// Splits one CSV record; handles quoted fields spanning embedded commas.
std::vector<Field> split_record(const std::string& line, std::size_t line_no) {
  std::vector<Field> fields;
  Field cur;
  std::size_t i = 0;
  bool at_start = true;
  while (i <= line.size()) {
    if (i == line.size()) {
      fields.push_back(cur);
      break;
    }
    char ch = line[i];
    if (at_start && ch == '"') {
      cur.quoted = true;
      ++i;
      while (true) {
        if (i >= line.size()) throw ParseError(fmt::format("csv line {}: unterminated quote", line_no));
        if (line[i] == '"') {
          if (i + 1 < line.size() && line[i + 1] == '"') {
            cur.text += '"';
            i += 2;
            continue;
          }
          ++i;
          break;
        }
        cur.text += line[i++];
      }
      at_start = false;
      if (i < line.size() && line[i] != ',') {
        throw ParseError(fmt::format("csv line {}: text after closing quote", line_no));
      }
      continue;
    }
    if (ch == ',') {
      fields.push_back(cur);
      cur = Field{};
      at_start = true;
      ++i;
      continue;
    }
    cur.text += ch;
    at_start = false;
    ++i;
  }
  return fields;
}

Cell parse_cell(const Field& f, std::size_t line_no) {
  if (f.quoted) return f.text;
  if (f.text.empty()) return std::monostate{};
  const bool floating = f.text.find_first_of(".eEni") != std::string::npos;
  if (!floating) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(f.text.data(), f.text.data() + f.text.size(), v);
    if (ec == std::errc() && ptr == f.text.data() + f.text.size()) return v;
    throw ParseError(fmt::format("csv line {}: bad integer '{}'", line_no, f.text));
  }
  if (f.text == "nan") return std::numeric_limits<double>::quiet_NaN();
  if (f.text == "inf") return std::numeric_limits<double>::infinity();
  if (f.text == "-inf") return -std::numeric_limits<double>::infinity();
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(f.text.data(), f.text.data() + f.text.size(), v);
  if (ec != std::errc() || ptr != f.text.data() + f.text.size()) {
    throw ParseError(fmt::format("csv line {}: bad number '{}'", line_no, f.text));
  }
  return v;
}

std::string markdown_cell(const Cell& c) {
  struct Visitor {
    std::string operator()(std::monostate) const { return {}; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const {
      if (std::isnan(v)) return "NA";
      return fmt::format("{:.2f}", v);
    }
    std::string operator()(const std::string& v) const {
      std::string out;
      for (char ch : v) {
        if (ch == '|') out += '\\';
        out += ch;
      }
      return out;
    }
  };
  return std::visit(Visitor{}, c);
}

}  // namespace

void write_csv(std::ostream& out, const Table& table) {
  for (const auto& line : table.provenance) out << "# " << line << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    if (i) out << ',';
    out << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out << ',';
      out << csv_cell(row[i]);
    }
    out << '\n';
  }
}

Table read_csv(std::istream& in) {
  Table table;
  std::string line;
  std::size_t line_no = 0;
  while (true) {
    if (!std::getline(in, line)) throw ParseError("csv is empty");
    ++line_no;
    if (line.rfind("# ", 0) != 0) break;
    table.provenance.push_back(line.substr(2));
  }
  for (const auto& f : split_record(line, line_no)) table.columns.push_back(f.text);
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_record(line, line_no);
    if (fields.size() != table.columns.size()) {
      throw ParseError(fmt::format("csv line {}: expected {} fields, got {}", line_no, table.columns.size(),
                                   fields.size()));
    }
    std::vector<Cell> row;
    row.reserve(fields.size());
    for (const auto& f : fields) row.push_back(parse_cell(f, line_no));
    table.rows.push_back(std::move(row));
  }
  return table;
}

void write_markdown(std::ostream& out, const Table& table) {
  for (const auto& line : table.provenance) fmt::print(out, "<!-- {} -->\n", line);
  if (!table.provenance.empty()) out << '\n';

  std::vector<std::size_t> idx;
  if (table.display_columns.empty()) {
    for (std::size_t i = 0; i < table.columns.size(); ++i) idx.push_back(i);
  } else {
    for (const auto& name : table.display_columns) idx.push_back(table.column_index(name));
  }
  out << '|';
  for (std::size_t i : idx) out << ' ' << table.columns[i] << " |";
  out << "\n|";
  for (std::size_t k = 0; k < idx.size(); ++k) out << " --- |";
  out << '\n';
  for (const auto& row : table.rows) {
    out << '|';
    for (std::size_t i : idx) out << ' ' << markdown_cell(row[i]) << " |";
    out << '\n';
  }
}

}  // namespace kemeny

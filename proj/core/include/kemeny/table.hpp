#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace kemeny {

/// Empty cells are std::monostate.
using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

/// Rows of named columns. CSV output carries every column at full
/// precision; Markdown shows `display_columns` (all columns when empty)
/// rounded to two decimals, preceded by the provenance lines.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::string> display_columns;
  std::vector<std::string> provenance;
  /// Number of requested computations that failed while building the table.
  std::size_t failures = 0;

  std::size_t column_index(std::string_view name) const;
  const Cell& at(std::size_t row, std::string_view column) const;
  double number(std::size_t row, std::string_view column) const;
  void add_row(std::vector<Cell> row);

  friend bool operator==(const Table& a, const Table& b) {
    return a.columns == b.columns && a.rows == b.rows && a.provenance == b.provenance;
  }
};

/// RFC 4180 CSV. Strings are always quoted and doubles always carry a
/// decimal point or exponent, so read_csv restores cell types exactly.
/// Provenance lines come first as "# " comments.
void write_csv(std::ostream& out, const Table& table);
Table read_csv(std::istream& in);

void write_markdown(std::ostream& out, const Table& table);

}  // namespace kemeny

#pragma once

#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace dirac::cli {

using Cell = std::variant<double, long long, std::string>;

/// Column-major result of a subcommand; footer lines carry summaries such as
/// drift reports.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::vector<Cell>> footer;

  void add_row(std::vector<Cell> row);
};

/// 17 significant digits; "nan", "inf", "-inf" for non-finite values.
std::string format_double(double v);

/// Header row, data rows, then footer rows prefixed with '#'.
void write_csv(const Table& t, std::ostream& os);
/// {"columns": [...], "rows": [[...]], "footer": [[...]]}
void write_json(const Table& t, std::ostream& os);

}  // namespace dirac::cli

#include "dirac/cli/table.hpp"

#include <cmath>
#include <cstdio>

#include "dirac/errors.hpp"
#include "json.hpp"

namespace dirac::cli {

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw UsageError("table row has " + std::to_string(row.size()) + " cells for " +
                     std::to_string(columns.size()) + " columns");
  }
  rows.push_back(std::move(row));
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string csv_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
  if (const auto* i = std::get_if<long long>(&c)) return std::to_string(*i);
  const auto& s = std::get<std::string>(c);
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char ch : s) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

void csv_line(const std::vector<Cell>& cells, std::ostream& os) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i != 0) os << ',';
    os << csv_cell(cells[i]);
  }
  os << '\n';
}

nlohmann::json json_cell(const Cell& c) {
  if (const auto* d = std::get_if<double>(&c)) {
    if (std::isfinite(*d)) return *d;
    return format_double(*d);
  }
  if (const auto* i = std::get_if<long long>(&c)) return *i;
  return std::get<std::string>(c);
}

nlohmann::json json_rows(const std::vector<std::vector<Cell>>& rows) {
  auto out = nlohmann::json::array();
  for (const auto& row : rows) {
    auto r = nlohmann::json::array();
    for (const auto& c : row) r.push_back(json_cell(c));
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace

void write_csv(const Table& t, std::ostream& os) {
  std::vector<Cell> header(t.columns.begin(), t.columns.end());
  csv_line(header, os);
  for (const auto& row : t.rows) csv_line(row, os);
  for (const auto& row : t.footer) {
    os << '#';
    csv_line(row, os);
  }
}

void write_json(const Table& t, std::ostream& os) {
  nlohmann::json j;
  j["columns"] = t.columns;
  j["rows"] = json_rows(t.rows);
  j["footer"] = json_rows(t.footer);
  os << j.dump(1) << '\n';
}

}  // namespace dirac::cli

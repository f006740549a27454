#include "dqr/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace dqr {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  cells.push_back(cur);
  return cells;
}

double parse_cell(const std::string& cell, int row, const std::string& col_name) {
  if (cell.empty()) {
    throw std::runtime_error("csv: missing value at row " + std::to_string(row) +
                             ", column '" + col_name + "'");
  }
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(cell, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  // Allow surrounding spaces only.
  while (pos < cell.size() && (cell[pos] == ' ' || cell[pos] == '\t')) ++pos;
  if (pos != cell.size()) {
    throw std::runtime_error("csv: non-numeric cell '" + cell + "' at row " +
                             std::to_string(row) + ", column '" + col_name + "'");
  }
  return v;
}

}  // namespace

CsvTable read_csv_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("csv: cannot open " + path);
  CsvTable table;
  std::string line;
  int row = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.front() == '#') continue;
    if (line.empty()) continue;
    const auto cells = split_csv_line(line);
    if (!have_header) {
      for (const auto& c : cells) table.header.push_back(c);
      have_header = true;
      continue;
    }
    ++row;
    if (cells.size() != table.header.size()) {
      throw std::runtime_error("csv: row " + std::to_string(row) + " has " +
                               std::to_string(cells.size()) + " cells, expected " +
                               std::to_string(table.header.size()));
    }
    std::vector<double> vals(cells.size());
    for (std::size_t j = 0; j < cells.size(); ++j) {
      vals[j] = parse_cell(cells[j], row, table.header[j]);
    }
    table.rows.push_back(std::move(vals));
  }
  if (!have_header) throw std::runtime_error("csv: empty file " + path);
  return table;
}

int CsvTable::column(const std::string& name) const {
  for (std::size_t j = 0; j < header.size(); ++j) {
    if (header[j] == name) return static_cast<int>(j);
  }
  return -1;
}

int CsvTable::require_column(const std::string& name) const {
  const int j = column(name);
  if (j < 0) throw std::runtime_error("csv: required column '" + name + "' not found");
  return j;
}

std::vector<double> CsvTable::values(int col) const {
  std::vector<double> out(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) out[i] = rows[i][col];
  return out;
}

SeriesData load_csv(const std::string& path, int lag_count) {
  if (lag_count < 0) throw std::invalid_argument("load_csv: lag_count must be >= 0");
  const CsvTable table = read_csv_table(path);
  const int n = static_cast<int>(table.rows.size());
  const int ncol = static_cast<int>(table.header.size());
  if (ncol < 1) throw std::runtime_error("load_csv: need a response column");
  const int T = n - lag_count;
  if (T < 2) throw std::runtime_error("load_csv: need at least 2 usable rows");

  SeriesData data;
  data.y.resize(T);
  data.X.resize(T, ncol + lag_count);  // intercept + regressors + lags
  data.column_names.push_back("const");
  for (int j = 1; j < ncol; ++j) data.column_names.push_back(table.header[j]);
  for (int j = 1; j <= lag_count; ++j) {
    data.column_names.push_back(table.header[0] + "_lag" + std::to_string(j));
  }
  for (int i = 0; i < T; ++i) {
    const int r = i + lag_count;
    data.y[i] = table.rows[r][0];
    data.X(i, 0) = 1.0;
    for (int j = 1; j < ncol; ++j) data.X(i, j) = table.rows[r][j];
    for (int j = 1; j <= lag_count; ++j) {
      data.X(i, ncol - 1 + j) = table.rows[r - j][0];
    }
  }
  return data;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  // Trim the representation when a shorter one round-trips.
  for (int prec = 1; prec < 17; ++prec) {
    char shorter[40];
    std::snprintf(shorter, sizeof(shorter), "%.*g", prec, v);
    double back;
    std::sscanf(shorter, "%lf", &back);
    if (back == v) return shorter;
  }
  return buf;
}

void write_csv(const std::string& path, const std::string& stamp,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("csv: cannot write " + path);
  out << "# " << stamp << "\n";
  for (std::size_t j = 0; j < header.size(); ++j) {
    out << (j ? "," : "") << header[j];
  }
  out << "\n";
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) {
      out << (j ? "," : "") << format_double(row[j]);
    }
    out << "\n";
  }
  if (!out) throw std::runtime_error("csv: write failed for " + path);
}

}  // namespace dqr

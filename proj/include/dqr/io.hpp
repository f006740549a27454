#pragma once

#include <string>
#include <vector>

#include "dqr/data.hpp"

namespace dqr {

// Strict CSV reader for model input: header row required, first column is the
// response, remaining columns are regressors. An intercept column is
// prepended; lag_count lagged copies of y are appended on the right (dropping
// the first lag_count rows). Lines starting with '#' are skipped. Missing or
// non-numeric cells are hard errors naming the row and column.
SeriesData load_csv(const std::string& path, int lag_count = 0);

// Generic numeric table with named columns (same syntax rules as load_csv).
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  int column(const std::string& name) const;       // -1 if absent
  int require_column(const std::string& name) const;
  std::vector<double> values(int col) const;
};

CsvTable read_csv_table(const std::string& path);

std::string format_double(double v);  // shortest round-trip decimal

// Writes `# <stamp>` then the header then the rows.
void write_csv(const std::string& path, const std::string& stamp,
               const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace dqr

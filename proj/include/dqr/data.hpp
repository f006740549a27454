#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace dqr {

// Observations with their design matrix. X has a leading intercept column of
// ones; lagged endogenous columns, when requested at load time, are appended
// on the right.
struct SeriesData {
  Eigen::VectorXd y;
  Eigen::MatrixXd X;
  std::vector<std::string> column_names;

  int length() const { return static_cast<int>(y.size()); }
  int regressors() const { return static_cast<int>(X.cols()); }

  void append_row(double y_new, const Eigen::VectorXd& x_new);
};

}  // namespace dqr

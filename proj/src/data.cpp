#include "dqr/data.hpp"

#include <stdexcept>

namespace dqr {

void SeriesData::append_row(double y_new, const Eigen::VectorXd& x_new) {
  const int t = length();
  if (t > 0 && x_new.size() != X.cols()) {
    throw std::domain_error("SeriesData::append_row: width mismatch");
  }
  y.conservativeResize(t + 1);
  y[t] = y_new;
  if (t == 0) X.resize(0, x_new.size());
  X.conservativeResize(t + 1, Eigen::NoChange);
  X.row(t) = x_new.transpose();
}

}  // namespace dqr

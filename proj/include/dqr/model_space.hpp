#pragma once

#include <Eigen/Dense>
#include <bit>
#include <cstdint>
#include <vector>

namespace dqr {

// A regressor subset: bit i of include_mask selects candidate regressor i
// (design column i + 1). The intercept column is in every model, so M total
// regressors span K = 2^(M-1) models.
struct ModelSpec {
  std::uint32_t include_mask = 0;
  int n_candidates = 0;

  int m() const { return std::popcount(include_mask); }  // candidates included
  int dim() const { return m() + 1; }                    // plus the intercept
  bool includes(int candidate) const {
    return (include_mask >> candidate) & 1u;
  }
  std::vector<int> column_indices() const;
};

// All K = 2^(M-1) subsets in binary-counting order, M >= 1 total regressors
// (intercept included in the count). Guarded by a cap on M.
std::vector<ModelSpec> enumerate_models(int M, int cap = 16);

Eigen::VectorXd project_row(const ModelSpec& model, const Eigen::VectorXd& x_full);
Eigen::MatrixXd project_columns(const ModelSpec& model, const Eigen::MatrixXd& X_full);

}  // namespace dqr

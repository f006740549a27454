#include "dqr/model_space.hpp"

#include <stdexcept>

namespace dqr {

std::vector<int> ModelSpec::column_indices() const {
  std::vector<int> cols{0};
  for (int i = 0; i < n_candidates; ++i) {
    if (includes(i)) cols.push_back(i + 1);
  }
  return cols;
}

std::vector<ModelSpec> enumerate_models(int M, int cap) {
  if (M < 1) throw std::invalid_argument("enumerate_models: need at least the intercept");
  if (M > cap) throw std::invalid_argument("enumerate_models: M exceeds the configured cap");
  const int n_cand = M - 1;
  const std::uint64_t K = 1ull << n_cand;
  std::vector<ModelSpec> out;
  out.reserve(K);
  for (std::uint64_t mask = 0; mask < K; ++mask) {
    out.push_back(ModelSpec{static_cast<std::uint32_t>(mask), n_cand});
  }
  return out;
}

Eigen::VectorXd project_row(const ModelSpec& model, const Eigen::VectorXd& x_full) {
  if (x_full.size() != model.n_candidates + 1) {
    throw std::domain_error("project_row: width mismatch");
  }
  const auto cols = model.column_indices();
  Eigen::VectorXd out(cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) out[j] = x_full[cols[j]];
  return out;
}

Eigen::MatrixXd project_columns(const ModelSpec& model, const Eigen::MatrixXd& X_full) {
  if (X_full.cols() != model.n_candidates + 1) {
    throw std::domain_error("project_columns: width mismatch");
  }
  const auto cols = model.column_indices();
  Eigen::MatrixXd out(X_full.rows(), cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) out.col(j) = X_full.col(cols[j]);
  return out;
}

}  // namespace dqr

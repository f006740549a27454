#include "dqr/dma.hpp"

#include <cmath>
#include <stdexcept>

namespace dqr {

Eigen::VectorXd predict_weights(const Eigen::VectorXd& upd_col, double alpha,
                                double xi) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw std::domain_error("predict_weights: alpha must lie in (0, 1]");
  }
  if (!(xi >= 0.0)) throw std::domain_error("predict_weights: xi must be nonnegative");
  if (std::abs(upd_col.sum() - 1.0) > 1e-8) {
    throw std::domain_error("predict_weights: input weights must sum to one");
  }
  Eigen::VectorXd out(upd_col.size());
  for (Eigen::Index k = 0; k < upd_col.size(); ++k) {
    out[k] = std::pow(std::max(upd_col[k], 0.0), alpha) + xi;
  }
  return out / out.sum();
}

double predictive_density(const ChainState& chain, const ModelSpec& model,
                          double y_new, const Eigen::VectorXd& x_full,
                          double omega_next, const QuantileConfig& qc) {
  if (!(omega_next > 0.0)) {
    throw std::domain_error("predictive_density: omega must be positive");
  }
  const Eigen::VectorXd x = project_row(model, x_full);
  const GaussState pred = chain.time() == 0
                              ? chain.init_predicted
                              : kf_predict(chain.filter_cache.back().filtered,
                                           chain.Omega);
  const double mean = qc.lambda * omega_next + x.dot(pred.mean);
  const double var = qc.delta * chain.sigma * omega_next + x.dot(pred.cov * x);
  return normal_pdf(y_new, mean, var);
}

ModelWeights update_weights(const Eigen::MatrixXd& pred,
                            const Eigen::MatrixXd& densities, KernelDiag* diag) {
  if (pred.rows() != densities.rows() || pred.cols() != densities.cols()) {
    throw std::invalid_argument("update_weights: shape mismatch");
  }
  if (densities.minCoeff() < 0.0) {
    throw std::domain_error("update_weights: densities must be nonnegative");
  }
  ModelWeights w;
  w.pred = pred;
  w.upd.resizeLike(pred);
  for (Eigen::Index l = 0; l < pred.cols(); ++l) {
    const Eigen::VectorXd raw = pred.col(l).cwiseProduct(densities.col(l));
    const double total = raw.sum();
    if (total > 0.0 && std::isfinite(total)) {
      w.upd.col(l) = raw / total;
    } else {
      // Every model's density underflowed for this chain: no information,
      // keep the prediction.
      w.upd.col(l) = pred.col(l);
      if (diag) ++diag->zero_density;
    }
  }
  w.pred_marginal = pred.rowwise().mean();
  return w;
}

Eigen::VectorXd rao_blackwell_state_forecast(const ChainPopulation& pop) {
  if (pop.size() < 1) throw std::invalid_argument("rao_blackwell: empty population");
  Eigen::VectorXd acc = Eigen::VectorXd::Zero(pop.model.dim());
  for (const auto& chain : pop.chains) {
    acc += chain.time() == 0 ? chain.init_predicted.mean
                             : chain.filter_cache.back().filtered.mean;
  }
  return acc / pop.size();
}

double combine_quantile_forecast(const Eigen::VectorXd& pred_marginal,
                                 const Eigen::VectorXd& per_model_forecasts) {
  if (pred_marginal.size() != per_model_forecasts.size()) {
    throw std::invalid_argument("combine_quantile_forecast: length mismatch");
  }
  if (std::abs(pred_marginal.sum() - 1.0) > 1e-8) {
    throw std::domain_error("combine_quantile_forecast: weights must sum to one");
  }
  return pred_marginal.dot(per_model_forecasts);
}

Eigen::VectorXd weight_variance(const Eigen::MatrixXd& pred_rows) {
  const Eigen::Index L = pred_rows.cols();
  if (L < 2) throw std::invalid_argument("weight_variance: need >= 2 chains");
  const Eigen::VectorXd mean = pred_rows.rowwise().mean();
  Eigen::VectorXd out = Eigen::VectorXd::Zero(pred_rows.rows());
  for (Eigen::Index l = 0; l < L; ++l) {
    out += (pred_rows.col(l) - mean).cwiseAbs2();
  }
  return out / static_cast<double>(L - 1);
}

double expected_model_size(const Eigen::VectorXd& pred_marginal,
                           const Eigen::VectorXi& model_sizes) {
  if (pred_marginal.size() != model_sizes.size()) {
    throw std::invalid_argument("expected_model_size: length mismatch");
  }
  if (std::abs(pred_marginal.sum() - 1.0) > 1e-8) {
    throw std::domain_error("expected_model_size: weights must sum to one");
  }
  return pred_marginal.dot(model_sizes.cast<double>());
}

}  // namespace dqr

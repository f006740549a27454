#pragma once

#include <Eigen/Dense>

#include "dqr/log.hpp"
#include "dqr/model_space.hpp"
#include "dqr/smcmc.hpp"

namespace dqr {

// Per-chain model probabilities. Columns are chains, rows are models; every
// column of pred and upd sums to one. pred_marginal is the chain average of
// the predicted weights, the quantity the forecasts combine over.
struct ModelWeights {
  Eigen::MatrixXd pred;          // K x L, pi_{t+1|t}^{(k,l)}
  Eigen::MatrixXd upd;           // K x L, pi_{t+1|t+1}^{(k,l)}
  Eigen::VectorXd pred_marginal; // length K
};

// Forgetting-factor prediction of one chain's weight column:
// pi_pred(k) = (pi(k)^alpha + xi) / sum_j (pi(j)^alpha + xi).
// The additive xi > 0 keeps every model alive; alpha in (0, 1].
Eigen::VectorXd predict_weights(const Eigen::VectorXd& upd_col, double alpha,
                                double xi);

// One-step-ahead observation density for a chain filtered through t, at the
// chain's jump-drawn augmentation w_{t+1}:
//   N(y | lambda w + x' b_{t+1|t},  delta sigma w + x' P_{t+1|t} x).
// x_full is the unprojected regressor row.
double predictive_density(const ChainState& chain, const ModelSpec& model,
                          double y_new, const Eigen::VectorXd& x_full,
                          double omega_next, const QuantileConfig& qc);

// Per-chain Bayes update of the predicted weights by the per-chain densities,
// normalized within each chain. A chain whose densities all vanish keeps its
// predicted column (counted in diag).
ModelWeights update_weights(const Eigen::MatrixXd& pred,
                            const Eigen::MatrixXd& densities,
                            KernelDiag* diag = nullptr);

// Chain average of the one-step state prediction E(b_{t+1} | ...) -- under
// random-walk dynamics the average of the filtered means.
Eigen::VectorXd rao_blackwell_state_forecast(const ChainPopulation& pop);

// q_DMA = sum_k weight_k * forecast_k; a convex combination of the inputs.
double combine_quantile_forecast(const Eigen::VectorXd& pred_marginal,
                                 const Eigen::VectorXd& per_model_forecasts);

// Per-model Monte Carlo variance of the predicted weights across chains
// (1/(L-1) divisor).
Eigen::VectorXd weight_variance(const Eigen::MatrixXd& pred_rows);

// E(S_t) = sum_k weight_k * size_k.
double expected_model_size(const Eigen::VectorXd& pred_marginal,
                           const Eigen::VectorXi& model_sizes);

}  // namespace dqr

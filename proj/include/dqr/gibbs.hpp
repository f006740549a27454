#pragma once

#include <Eigen/Dense>
#include <vector>

#include "dqr/data.hpp"
#include "dqr/distributions.hpp"
#include "dqr/quantile.hpp"
#include "dqr/rng.hpp"
#include "dqr/ssm.hpp"

namespace dqr {

// Fixed hyperparameters: sigma ~ IG(a0, b0), Omega ~ IW(c0, C0) in the
// parameterization of sample_inverse_wishart, and kappa the diffuse prior
// variance of the first state.
struct PriorHyper {
  double a0 = 2.5;
  double b0 = 1.0;
  double c0 = 0.0;  // 0 means "dimension + 2", resolved when a chain is built
  Eigen::MatrixXd C0;
  double kappa = 1e6;
};

PriorHyper default_hyper(int dim, double c0_scale = 0.01, double kappa = 1e6);

// One chain's augmented state theta_t = (sigma, Omega, w_{1:t}, b_{1:t}) plus
// the Kalman statistics of the filter run under the current (sigma, Omega,
// w_{1:t}). The cache is refreshed at the end of every sweep so that jumps and
// predictive densities always read moments consistent with the current
// parameters.
struct ChainState {
  double sigma = 1.0;
  Eigen::MatrixXd Omega;
  std::vector<double> omegas;
  std::vector<Eigen::VectorXd> betas;
  std::vector<KalmanStepResult> filter_cache;
  GaussState init_predicted;  // diffuse start (0, kappa I)

  int time() const { return static_cast<int>(betas.size()); }
  int dim() const { return static_cast<int>(init_predicted.mean.size()); }
};

// Prior-initialized chain at t = 0.
ChainState init_chain(int dim, const PriorHyper& hyper, const QuantileConfig& qc,
                      RngStream& rng);

// sigma | b_{1:t}, data with the augmentation path collapsed out:
// IG(a0 + t, b0 + sum_s rho_tau(y_s - x_s' b_s)).
double draw_sigma_collapsed(const ChainState& chain, const SeriesData& data,
                            const QuantileConfig& qc, const PriorHyper& hyper,
                            RngStream& rng);

// Parameters of the inverse-Gaussian full conditional of 1/w_s given the
// residual r_s: mean sqrt((lambda^2 + 2 delta) / r_s^2), shape
// (lambda^2 + 2 delta) / (delta sigma). Residuals are floored at 1e-12 in
// magnitude (counted in diag).
struct OmegaConditional {
  double mean;
  double shape;
};
OmegaConditional omega_full_conditional(double residual, double sigma,
                                        const QuantileConfig& qc,
                                        KernelDiag* diag = nullptr);

std::vector<double> draw_omegas(const ChainState& chain, const SeriesData& data,
                                const QuantileConfig& qc, RngStream& rng,
                                KernelDiag* diag = nullptr);

// b_{1:t} | sigma, Omega, w_{1:t}, data via forward filtering and backward
// sampling with per-time noise delta*sigma*w_s and mean offset lambda*w_s.
std::vector<Eigen::VectorXd> draw_beta_path(const ChainState& chain,
                                            const SeriesData& data,
                                            const QuantileConfig& qc, RngStream& rng,
                                            KernelDiag* diag = nullptr);

// Omega | b_{1:t}: IW(c0 + (t-1)/2, C0 + 1/2 sum (b_{s+1}-b_s)(b_{s+1}-b_s)').
// A chain with t < 2 increments yields a prior draw.
Eigen::MatrixXd draw_Omega(const ChainState& chain, const PriorHyper& hyper,
                           RngStream& rng);

// One full transition sweep in the order sigma -> w -> b -> Omega (the sigma
// step is collapsed over w, so the order must not be changed), ending with a
// cache refresh. fixed_lag < 0 redraws the whole coefficient path; otherwise
// only the fixed_lag + 1 newest states are redrawn conditional on the frozen
// prefix.
ChainState transition_sweep(const ChainState& chain, const SeriesData& data,
                            const QuantileConfig& qc, const PriorHyper& hyper,
                            RngStream& rng, KernelDiag* diag = nullptr,
                            int fixed_lag = -1);

// Jumping kernel: extends the chain to t+1 by drawing w_{t+1} from its
// inverse-Gaussian full conditional (at t = 0, from its exponential prior) and
// b_{t+1} from the one-step filtered posterior N(b_{t+1|t+1}, P_{t+1|t+1}).
// The prefix theta_t is left untouched.
ChainState jump_extend(const ChainState& chain, double y_new,
                       const Eigen::VectorXd& x_new, const QuantileConfig& qc,
                       RngStream& rng, KernelDiag* diag = nullptr);

// Recompute the Kalman cache under the chain's current (sigma, Omega, w_{1:t}).
void refresh_filter_cache(ChainState& chain, const SeriesData& data,
                          const QuantileConfig& qc);

}  // namespace dqr

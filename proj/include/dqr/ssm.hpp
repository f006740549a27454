#pragma once

#include <Eigen/Dense>
#include <vector>

#include "dqr/quantile.hpp"
#include "dqr/rng.hpp"

namespace dqr {

// Conditionally Gaussian local-level form used throughout:
//   y_s    = x_s' b_s + lambda w_s + e_s,   e_s ~ N(0, delta sigma w_s)
//   b_s    = b_{s-1} + z_s,                 z_s ~ N(0, Omega)
//   b_1    ~ N(0, kappa I)   (diffuse start, entered as the first predicted state)
// Given the augmentation path w_{1:t} everything below is exact linear algebra.

struct GaussState {
  Eigen::VectorXd mean;
  Eigen::MatrixXd cov;
};

struct KalmanStepResult {
  GaussState predicted;
  GaussState filtered;
  double innovation = 0.0;            // nu_s = y_s - yhat_{s|s-1}
  double innovation_precision = 0.0;  // V_s = 1 / S_s
  double predictive_mean = 0.0;       // yhat_{s|s-1} = lambda w_s + x_s' b_{s|s-1}
  double predictive_variance = 0.0;   // S_s = delta sigma w_s + x_s' P_{s|s-1} x_s
  Eigen::VectorXd x;                  // regressor row consumed at this step
};

// Counters for rare numerical events; aggregated and logged at barriers so
// parallel runs stay deterministic.
struct KernelDiag {
  long smoother_jitter = 0;
  long omega_floor = 0;
  long zero_density = 0;
  long rate_skipped = 0;
  void add(const KernelDiag& o) {
    smoother_jitter += o.smoother_jitter;
    omega_floor += o.omega_floor;
    zero_density += o.zero_density;
    rate_skipped += o.rate_skipped;
  }
};

GaussState diffuse_init(int dim, double kappa);

// Random-walk prediction: mean unchanged, covariance grows by Omega.
GaussState kf_predict(const GaussState& prev_filtered, const Eigen::MatrixXd& Omega);

KalmanStepResult kf_update(const GaussState& pred, const Eigen::VectorXd& x, double y,
                           double omega, double sigma, const QuantileConfig& qc);

// Filter rows 0..n-1 of (y, X); the first step consumes init_predicted as its
// predicted state, later steps predict from the previous filtered state.
std::vector<KalmanStepResult> run_filter(const Eigen::VectorXd& y,
                                         const Eigen::MatrixXd& X,
                                         const std::vector<double>& omegas,
                                         double sigma, const Eigen::MatrixXd& Omega,
                                         const QuantileConfig& qc,
                                         const GaussState& init_predicted);

// Fixed-interval (RTS) smoother; element s holds moments of b_s given all data
// in the path. The last element equals the final filtered state.
std::vector<GaussState> smooth_fixed_interval(const std::vector<KalmanStepResult>& path,
                                              const Eigen::MatrixXd& Omega,
                                              KernelDiag* diag = nullptr);

// Joint draw of b_{1:t} from its Gaussian full conditional
// (forward-filter backward-sample).
std::vector<Eigen::VectorXd> draw_state_path(const std::vector<KalmanStepResult>& path,
                                             const Eigen::MatrixXd& Omega, RngStream& rng,
                                             KernelDiag* diag = nullptr);

// Moments of b_{t-h} given data through t, via the lag-augmented recursion;
// agrees with the fixed-interval smoother at index t-h.
GaussState smooth_fixed_lag(const std::vector<KalmanStepResult>& path,
                            const Eigen::MatrixXd& Omega, int h);

}  // namespace dqr

#pragma once

#include <Eigen/Dense>
#include <cstdint>

namespace dqr {

// Synthetic series y_t = x_t' beta*_t + e_t with e_t ~ N(0, nu2_t) and
// known coefficient paths, for recovery experiments. The design has an
// intercept column followed by two uniform covariates on (-T/2, T/2).
struct DGPOutput {
  Eigen::VectorXd y;
  Eigen::MatrixXd x;          // T x 3, first column ones
  Eigen::MatrixXd beta_star;  // T x 3 true mean-regression coefficients
  Eigen::VectorXd nu2;        // noise variances
};

// Constant intercept, a slope with a kink at t = 100, a logistic transition in
// the third coefficient, and a variance drop 1 -> 0.25 after t = 100.
DGPOutput simulate_smooth(int T, std::uint64_t seed);

// Sign flip of the intercept and a halved slope at t = 101, constant third
// coefficient, GARCH(1,1) conditional variance started at its stationary
// level.
DGPOutput simulate_abrupt(int T, std::uint64_t seed);

// Coefficients of the tau-level quantile implied by the DGP: the intercept
// column shifts by nu_t * Phi^-1(tau), the others are unchanged.
Eigen::MatrixXd true_quantile_path(const DGPOutput& out, double tau);

}  // namespace dqr

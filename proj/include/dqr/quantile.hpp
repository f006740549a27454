#pragma once

namespace dqr {

// Quantile level together with the asymmetric-Laplace mixture constants.
// A centred AL(tau, 0, sigma) variable can be written lambda*w + sqrt(delta*sigma*w)*z
// with w exponential of mean sigma and z standard normal; this choice of
// (lambda, delta) keeps the tau-level quantile of the error at zero.
struct QuantileConfig {
  double tau;
  double lambda;  // (1 - 2 tau) / (tau (1 - tau))
  double delta;   // 2 / (tau (1 - tau))
};

QuantileConfig make_quantile_config(double tau);

// Centred asymmetric Laplace law: location is the tau-level quantile, scale > 0.
struct ALDParams {
  double tau;
  double location;
  double scale;
};

// rho_tau(u) = u (tau - 1{u < 0}); nonnegative, zero iff u = 0.
double pinball_loss(double residual, double tau);

// Closed-form density tau(1-tau)/sigma * exp(-rho_tau(x - location)/sigma).
double ald_pdf(double x, const ALDParams& params);

double ald_cdf(double x, const ALDParams& params);

// P(X <= location); equals tau by construction.
double ald_cdf_at_location(const ALDParams& params);

}  // namespace dqr

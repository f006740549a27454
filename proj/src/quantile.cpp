#include "dqr/quantile.hpp"

#include <cmath>
#include <stdexcept>

namespace dqr {

QuantileConfig make_quantile_config(double tau) {
  if (!(tau > 0.0 && tau < 1.0)) {
    throw std::domain_error("make_quantile_config: tau must lie in (0, 1)");
  }
  const double tq = tau * (1.0 - tau);
  return QuantileConfig{tau, (1.0 - 2.0 * tau) / tq, 2.0 / tq};
}

double pinball_loss(double residual, double tau) {
  return residual * (tau - (residual < 0.0 ? 1.0 : 0.0));
}

double ald_pdf(double x, const ALDParams& params) {
  if (!(params.scale > 0.0)) throw std::domain_error("ald_pdf: scale must be positive");
  const double u = x - params.location;
  return params.tau * (1.0 - params.tau) / params.scale *
         std::exp(-pinball_loss(u, params.tau) / params.scale);
}

double ald_cdf(double x, const ALDParams& params) {
  if (!(params.scale > 0.0)) throw std::domain_error("ald_cdf: scale must be positive");
  const double u = x - params.location;
  if (u <= 0.0) {
    return params.tau * std::exp((1.0 - params.tau) * u / params.scale);
  }
  return 1.0 - (1.0 - params.tau) * std::exp(-params.tau * u / params.scale);
}

double ald_cdf_at_location(const ALDParams& params) {
  return ald_cdf(params.location, params);
}

}  // namespace dqr

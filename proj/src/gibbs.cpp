#include "dqr/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dqr {

namespace {

// Data rows 0..t-1 as seen by a chain at time t.
void check_chain_data(const ChainState& chain, const SeriesData& data) {
  if (data.length() < chain.time()) {
    throw std::domain_error("gibbs: data shorter than chain state");
  }
  if (data.regressors() != chain.dim()) {
    throw std::domain_error("gibbs: design width does not match chain dimension");
  }
}

double resolved_c0(const PriorHyper& hyper, int dim) {
  return hyper.c0 > 0.0 ? hyper.c0 : dim + 2.0;
}

}  // namespace

PriorHyper default_hyper(int dim, double c0_scale, double kappa) {
  PriorHyper h;
  h.c0 = dim + 2.0;
  h.C0 = c0_scale * Eigen::MatrixXd::Identity(dim, dim);
  h.kappa = kappa;
  return h;
}

ChainState init_chain(int dim, const PriorHyper& hyper, const QuantileConfig& qc,
                      RngStream& rng) {
  (void)qc;
  if (hyper.C0.rows() != dim || hyper.C0.cols() != dim) {
    throw std::domain_error("init_chain: C0 dimension mismatch");
  }
  ChainState c;
  c.sigma = sample_inverse_gamma(hyper.a0, hyper.b0, rng);
  c.Omega = sample_inverse_wishart(resolved_c0(hyper, dim), hyper.C0, rng);
  c.init_predicted = diffuse_init(dim, hyper.kappa);
  return c;
}

double draw_sigma_collapsed(const ChainState& chain, const SeriesData& data,
                            const QuantileConfig& qc, const PriorHyper& hyper,
                            RngStream& rng) {
  check_chain_data(chain, data);
  const int t = chain.time();
  double loss = 0.0;
  for (int s = 0; s < t; ++s) {
    loss += pinball_loss(data.y[s] - data.X.row(s).dot(chain.betas[s]), qc.tau);
  }
  return sample_inverse_gamma(hyper.a0 + t, hyper.b0 + loss, rng);
}

OmegaConditional omega_full_conditional(double residual, double sigma,
                                        const QuantileConfig& qc, KernelDiag* diag) {
  double r = std::abs(residual);
  if (r < 1e-12) {
    r = 1e-12;
    if (diag) ++diag->omega_floor;
  }
  const double num = qc.lambda * qc.lambda + 2.0 * qc.delta;
  return OmegaConditional{std::sqrt(num) / r, num / (qc.delta * sigma)};
}

std::vector<double> draw_omegas(const ChainState& chain, const SeriesData& data,
                                const QuantileConfig& qc, RngStream& rng,
                                KernelDiag* diag) {
  check_chain_data(chain, data);
  const int t = chain.time();
  std::vector<double> out(t);
  for (int s = 0; s < t; ++s) {
    const double resid = data.y[s] - data.X.row(s).dot(chain.betas[s]);
    const OmegaConditional oc = omega_full_conditional(resid, chain.sigma, qc, diag);
    out[s] = 1.0 / sample_inverse_gaussian(oc.mean, oc.shape, rng);
  }
  return out;
}

std::vector<Eigen::VectorXd> draw_beta_path(const ChainState& chain,
                                            const SeriesData& data,
                                            const QuantileConfig& qc, RngStream& rng,
                                            KernelDiag* diag) {
  check_chain_data(chain, data);
  const int t = chain.time();
  const auto path = run_filter(data.y.head(t), data.X.topRows(t), chain.omegas,
                               chain.sigma, chain.Omega, qc, chain.init_predicted);
  return draw_state_path(path, chain.Omega, rng, diag);
}

Eigen::MatrixXd draw_Omega(const ChainState& chain, const PriorHyper& hyper,
                           RngStream& rng) {
  const int t = chain.time();
  const int m = chain.dim();
  const double c0 = resolved_c0(hyper, m);
  if (t < 2) {
    return sample_inverse_wishart(c0, hyper.C0, rng);
  }
  Eigen::MatrixXd C = hyper.C0;
  for (int s = 0; s + 1 < t; ++s) {
    const Eigen::VectorXd d = chain.betas[s + 1] - chain.betas[s];
    C += 0.5 * d * d.transpose();
  }
  return sample_inverse_wishart(c0 + 0.5 * (t - 1), C, rng);
}

ChainState transition_sweep(const ChainState& chain, const SeriesData& data,
                            const QuantileConfig& qc, const PriorHyper& hyper,
                            RngStream& rng, KernelDiag* diag, int fixed_lag) {
  check_chain_data(chain, data);
  const int t = chain.time();
  if (t == 0) throw std::domain_error("transition_sweep: chain has no observations");

  ChainState next = chain;
  next.sigma = draw_sigma_collapsed(next, data, qc, hyper, rng);
  next.omegas = draw_omegas(next, data, qc, rng, diag);

  const int window_start =
      (fixed_lag >= 0) ? std::max(0, t - 1 - fixed_lag) : 0;
  if (window_start == 0) {
    next.betas = draw_beta_path(next, data, qc, rng, diag);
  } else {
    // Redraw only the newest states, conditioning on the frozen prefix: the
    // window filter starts from the exact transition density at the boundary.
    const int w = t - window_start;
    GaussState boundary{next.betas[window_start - 1], next.Omega};
    const std::vector<double> w_omegas(next.omegas.begin() + window_start,
                                       next.omegas.end());
    const auto path = run_filter(data.y.segment(window_start, w),
                                 data.X.middleRows(window_start, w), w_omegas,
                                 next.sigma, next.Omega, qc, boundary);
    const auto draw = draw_state_path(path, next.Omega, rng, diag);
    for (int j = 0; j < w; ++j) next.betas[window_start + j] = draw[j];
  }

  next.Omega = draw_Omega(next, hyper, rng);
  refresh_filter_cache(next, data, qc);
  return next;
}

ChainState jump_extend(const ChainState& chain, double y_new,
                       const Eigen::VectorXd& x_new, const QuantileConfig& qc,
                       RngStream& rng, KernelDiag* diag) {
  if (x_new.size() != chain.dim()) {
    throw std::domain_error("jump_extend: regressor width mismatch");
  }
  ChainState next = chain;
  const int t = chain.time();

  double omega_new;
  GaussState pred;
  if (t == 0) {
    // No coefficient to form a residual from yet: the augmentation comes from
    // its prior and the state prediction from the diffuse start.
    omega_new = sample_exponential(1.0 / next.sigma, rng);
    pred = next.init_predicted;
  } else {
    const double resid = y_new - x_new.dot(next.betas[t - 1]);
    const OmegaConditional oc = omega_full_conditional(resid, next.sigma, qc, diag);
    omega_new = 1.0 / sample_inverse_gaussian(oc.mean, oc.shape, rng);
    pred = kf_predict(next.filter_cache.back().filtered, next.Omega);
  }

  const KalmanStepResult step = kf_update(pred, x_new, y_new, omega_new, next.sigma, qc);
  next.omegas.push_back(omega_new);
  next.betas.push_back(sample_mvn(step.filtered.mean, step.filtered.cov, rng));
  next.filter_cache.push_back(step);
  return next;
}

void refresh_filter_cache(ChainState& chain, const SeriesData& data,
                          const QuantileConfig& qc) {
  check_chain_data(chain, data);
  const int t = chain.time();
  chain.filter_cache = run_filter(data.y.head(t), data.X.topRows(t), chain.omegas,
                                  chain.sigma, chain.Omega, qc, chain.init_predicted);
}

}  // namespace dqr

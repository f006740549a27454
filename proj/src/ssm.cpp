#include "dqr/ssm.hpp"

#include <cmath>
#include <stdexcept>

#include "dqr/distributions.hpp"

namespace dqr {

namespace {

void symmetrize(Eigen::MatrixXd& a) { a = (0.5 * (a + a.transpose())).eval(); }

// Backward gain G_s = P_{s|s} (P_{s+1|s})^-1, formed by a linear solve. A
// numerically singular predicted covariance gets one shot of jitter.
Eigen::MatrixXd smoother_gain(const Eigen::MatrixXd& filtered_cov,
                              Eigen::MatrixXd pred_cov, KernelDiag* diag) {
  Eigen::LDLT<Eigen::MatrixXd> f(pred_cov);
  Eigen::VectorXd d = f.vectorD();
  const double dmax = std::max(d.maxCoeff(), 0.0);
  if (!(d.minCoeff() > 1e-13 * std::max(dmax, 1e-300))) {
    pred_cov += 1e-10 * Eigen::MatrixXd::Identity(pred_cov.rows(), pred_cov.cols());
    f.compute(pred_cov);
    if (diag) ++diag->smoother_jitter;
    d = f.vectorD();
    if (!(d.minCoeff() > 0.0)) {
      throw std::runtime_error("smoother: predicted covariance singular after jitter");
    }
  }
  // G = (P_pred^-1 P_filt)' by symmetry of both factors.
  return f.solve(filtered_cov).transpose();
}

}  // namespace

GaussState diffuse_init(int dim, double kappa) {
  if (dim < 1 || !(kappa > 0.0)) throw std::domain_error("diffuse_init: bad arguments");
  return GaussState{Eigen::VectorXd::Zero(dim),
                    kappa * Eigen::MatrixXd::Identity(dim, dim)};
}

GaussState kf_predict(const GaussState& prev_filtered, const Eigen::MatrixXd& Omega) {
  if (Omega.rows() != prev_filtered.mean.size() ||
      Omega.cols() != prev_filtered.mean.size()) {
    throw std::domain_error("kf_predict: dimension mismatch");
  }
  GaussState out{prev_filtered.mean, prev_filtered.cov + Omega};
  symmetrize(out.cov);
  return out;
}

KalmanStepResult kf_update(const GaussState& pred, const Eigen::VectorXd& x, double y,
                           double omega, double sigma, const QuantileConfig& qc) {
  if (x.size() != pred.mean.size()) throw std::domain_error("kf_update: dimension mismatch");
  if (!(omega > 0.0) || !(sigma > 0.0)) {
    throw std::domain_error("kf_update: omega and sigma must be positive");
  }
  KalmanStepResult r;
  r.predicted = pred;
  r.x = x;
  const Eigen::VectorXd Px = pred.cov * x;
  const double S = qc.delta * sigma * omega + x.dot(Px);
  if (!(S > 0.0)) throw std::runtime_error("kf_update: nonpositive innovation variance");
  r.predictive_mean = qc.lambda * omega + x.dot(pred.mean);
  r.predictive_variance = S;
  r.innovation = y - r.predictive_mean;
  r.innovation_precision = 1.0 / S;
  r.filtered.mean = pred.mean + Px * (r.innovation / S);
  r.filtered.cov = pred.cov - Px * Px.transpose() / S;
  symmetrize(r.filtered.cov);
  return r;
}

std::vector<KalmanStepResult> run_filter(const Eigen::VectorXd& y,
                                         const Eigen::MatrixXd& X,
                                         const std::vector<double>& omegas,
                                         double sigma, const Eigen::MatrixXd& Omega,
                                         const QuantileConfig& qc,
                                         const GaussState& init_predicted) {
  const int n = static_cast<int>(y.size());
  if (X.rows() != n || static_cast<int>(omegas.size()) != n) {
    throw std::domain_error("run_filter: length mismatch");
  }
  std::vector<KalmanStepResult> path;
  path.reserve(n);
  for (int s = 0; s < n; ++s) {
    const GaussState pred =
        (s == 0) ? init_predicted : kf_predict(path[s - 1].filtered, Omega);
    path.push_back(kf_update(pred, X.row(s).transpose(), y[s], omegas[s], sigma, qc));
  }
  return path;
}

std::vector<GaussState> smooth_fixed_interval(const std::vector<KalmanStepResult>& path,
                                              const Eigen::MatrixXd& Omega,
                                              KernelDiag* diag) {
  if (path.empty()) throw std::domain_error("smooth_fixed_interval: empty path");
  const int n = static_cast<int>(path.size());
  std::vector<GaussState> out(n);
  out[n - 1] = path[n - 1].filtered;
  for (int s = n - 2; s >= 0; --s) {
    const GaussState& f = path[s].filtered;
    const Eigen::MatrixXd pred_cov = f.cov + Omega;       // P_{s+1|s}
    const Eigen::VectorXd& pred_mean = f.mean;            // b_{s+1|s}
    const Eigen::MatrixXd G = smoother_gain(f.cov, pred_cov, diag);
    out[s].mean = f.mean + G * (out[s + 1].mean - pred_mean);
    out[s].cov = f.cov + G * (out[s + 1].cov - pred_cov) * G.transpose();
    symmetrize(out[s].cov);
  }
  return out;
}

std::vector<Eigen::VectorXd> draw_state_path(const std::vector<KalmanStepResult>& path,
                                             const Eigen::MatrixXd& Omega, RngStream& rng,
                                             KernelDiag* diag) {
  if (path.empty()) throw std::domain_error("draw_state_path: empty path");
  const int n = static_cast<int>(path.size());
  std::vector<Eigen::VectorXd> draw(n);
  draw[n - 1] = sample_mvn(path[n - 1].filtered.mean, path[n - 1].filtered.cov, rng);
  for (int s = n - 2; s >= 0; --s) {
    const GaussState& f = path[s].filtered;
    const Eigen::MatrixXd pred_cov = f.cov + Omega;
    const Eigen::MatrixXd G = smoother_gain(f.cov, pred_cov, diag);
    const Eigen::VectorXd mean = f.mean + G * (draw[s + 1] - f.mean);
    Eigen::MatrixXd cov = f.cov - G * pred_cov * G.transpose();
    symmetrize(cov);
    draw[s] = sample_mvn(mean, cov, rng);
  }
  return draw;
}

GaussState smooth_fixed_lag(const std::vector<KalmanStepResult>& path,
                            const Eigen::MatrixXd& Omega, int h) {
  if (path.empty()) throw std::domain_error("smooth_fixed_lag: empty path");
  const int n = static_cast<int>(path.size());
  if (h < 0 || h > n - 1) throw std::domain_error("smooth_fixed_lag: lag out of range");
  const int r = n - 1 - h;  // target index (time t - h)

  // Augmented-state pass over observations r..n-1. M tracks the
  // cross-covariance Cov(b_r, b_s | data before s), started at P_{r|r-1}.
  GaussState out = path[r].predicted;
  Eigen::MatrixXd M = path[r].predicted.cov;
  for (int s = r; s < n; ++s) {
    const Eigen::MatrixXd pred_cov =
        (s == 0) ? path[0].predicted.cov
                 : Eigen::MatrixXd(path[s - 1].filtered.cov + Omega);
    const Eigen::VectorXd& x = path[s].x;
    const double S = path[s].predictive_variance;
    const Eigen::VectorXd Mx = M * x;
    out.mean += Mx * (path[s].innovation / S);
    out.cov -= Mx * Mx.transpose() / S;
    // Measurement update of the cross term; the time update is the identity
    // under random-walk dynamics.
    M -= Mx * (x.transpose() * pred_cov) / S;
  }
  symmetrize(out.cov);
  return out;
}

}  // namespace dqr

#include <doctest.h>

#include <cmath>
#include <vector>

#include "dqr/distributions.hpp"
#include "dqr/ssm.hpp"
#include "oracles.hpp"

using namespace dqr;

namespace {

struct Instance {
  Eigen::VectorXd y;
  Eigen::MatrixXd X;
  std::vector<double> omegas;
  double sigma;
  Eigen::MatrixXd Omega;
  QuantileConfig qc;
  double kappa;

  std::vector<KalmanStepResult> filter() const {
    return run_filter(y, X, omegas, sigma, Omega, qc, diffuse_init(X.cols(), kappa));
  }
  oracle::DenseSsmOracle dense() const {
    return oracle::DenseSsmOracle::build(y, X, omegas, sigma, Omega, qc, kappa);
  }
};

Instance random_instance(int T, int m, double tau, RngStream& rng, double kappa = 50.0) {
  Instance in;
  in.qc = make_quantile_config(tau);
  in.kappa = kappa;
  in.sigma = 0.5 + rng.uniform();
  in.y.resize(T);
  in.X.resize(T, m);
  in.omegas.resize(T);
  for (int t = 0; t < T; ++t) {
    in.y[t] = 2.0 * rng.normal();
    for (int j = 0; j < m; ++j) in.X(t, j) = rng.normal();
    in.omegas[t] = rng.exponential(1.0);
  }
  Eigen::MatrixXd A(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) A(i, j) = rng.normal();
  in.Omega = A * A.transpose() + 0.1 * Eigen::MatrixXd::Identity(m, m);
  return in;
}

}  // namespace

TEST_CASE("kf_predict adds Omega") {
  GaussState s{Eigen::VectorXd::Zero(3), Eigen::MatrixXd::Identity(3, 3)};
  const Eigen::MatrixXd Om = 0.01 * Eigen::MatrixXd::Identity(3, 3);
  const GaussState out = kf_predict(s, Om);
  CHECK(out.mean.isZero(0));
  CHECK((out.cov - 1.01 * Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-15);

  const GaussState same = kf_predict(s, Eigen::MatrixXd::Zero(3, 3));
  CHECK(same.mean == s.mean);
  CHECK(same.cov == s.cov);

  RngStream rng(7);
  auto in = random_instance(1, 3, 0.3, rng);
  const GaussState g{Eigen::VectorXd::Zero(3), in.Omega};
  const GaussState grown = kf_predict(g, in.Omega);
  CHECK(grown.cov.trace() == doctest::Approx(g.cov.trace() + in.Omega.trace()));
  CHECK_THROWS_AS(kf_predict(s, Eigen::MatrixXd::Zero(2, 2)), std::domain_error);
}

TEST_CASE("kf_update scalar hand case") {
  // tau = 0.5, sigma = 1, omega = 1 so the noise variance is delta*sigma*omega = 8.
  const QuantileConfig qc = make_quantile_config(0.5);
  GaussState pred{Eigen::VectorXd::Zero(1), Eigen::MatrixXd::Identity(1, 1)};
  Eigen::VectorXd x(1);
  x << 1.0;
  const KalmanStepResult r = kf_update(pred, x, 9.0, 1.0, 1.0, qc);
  CHECK(r.predictive_variance == doctest::Approx(9.0));
  CHECK(r.innovation == doctest::Approx(9.0));
  CHECK(r.innovation_precision == doctest::Approx(1.0 / 9.0));
  CHECK(r.filtered.mean[0] == doctest::Approx(1.0));
  CHECK(r.filtered.cov(0, 0) == doctest::Approx(8.0 / 9.0));
}

TEST_CASE("kf_update zero regressor leaves the state untouched") {
  const QuantileConfig qc = make_quantile_config(0.3);
  RngStream rng(17);
  auto in = random_instance(1, 2, 0.3, rng);
  GaussState pred{Eigen::VectorXd::Ones(2), in.Omega};
  const KalmanStepResult r =
      kf_update(pred, Eigen::VectorXd::Zero(2), 1.7, 0.8, 1.1, qc);
  CHECK((r.filtered.mean - pred.mean).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((r.filtered.cov - pred.cov).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(r.innovation == doctest::Approx(1.7 - qc.lambda * 0.8));
}

TEST_CASE("kf_update shrinks variance in the Loewner order") {
  RngStream rng(27);
  for (int rep = 0; rep < 20; ++rep) {
    auto in = random_instance(1, 3, 0.25, rng);
    GaussState pred{Eigen::VectorXd::Zero(3), in.Omega};
    const KalmanStepResult r = kf_update(pred, in.X.row(0).transpose(), in.y[0],
                                         in.omegas[0], in.sigma, in.qc);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(pred.cov - r.filtered.cov);
    CHECK(es.eigenvalues().minCoeff() > -1e-10);
  }
}

TEST_CASE("filter and smoother match the dense joint-Gaussian oracle") {
  RngStream rng(37);
  for (int rep = 0; rep < 25; ++rep) {
    auto in = random_instance(5, 2, 0.25, rng);
    const auto path = in.filter();
    const auto smoothed = smooth_fixed_interval(path, in.Omega);
    const auto full = in.dense();

    // Filtered moments at s come from the joint over data 1..s+1.
    for (int s = 0; s < 5; ++s) {
      Instance part = in;
      part.y = in.y.head(s + 1);
      part.X = in.X.topRows(s + 1);
      part.omegas.assign(in.omegas.begin(), in.omegas.begin() + s + 1);
      const auto sub = part.dense();
      const GaussState want = sub.marginal(s);
      const double scale = std::max(1.0, want.mean.cwiseAbs().maxCoeff());
      CHECK((path[s].filtered.mean - want.mean).cwiseAbs().maxCoeff() < 1e-10 * scale);
      CHECK((path[s].filtered.cov - want.cov).cwiseAbs().maxCoeff() < 1e-10);
      const GaussState sm = full.marginal(s);
      CHECK((smoothed[s].mean - sm.mean).cwiseAbs().maxCoeff() < 1e-10 * scale);
      CHECK((smoothed[s].cov - sm.cov).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("smoother trivial and decoupled limits") {
  RngStream rng(47);
  auto in = random_instance(1, 2, 0.4, rng);
  const auto path = in.filter();
  const auto sm = smooth_fixed_interval(path, in.Omega);
  CHECK((sm[0].mean - path[0].filtered.mean).cwiseAbs().maxCoeff() == 0.0);

  // Huge Omega decouples the states, so smoothing changes nothing. This needs
  // every state fully identified by its own observation (scalar state): the
  // filtered variance then stays bounded and the backward gain vanishes.
  auto big = random_instance(6, 1, 0.4, rng, 10.0);
  big.Omega = 1e10 * Eigen::MatrixXd::Identity(1, 1);
  for (int s = 0; s < 6; ++s) {
    if (std::abs(big.X(s, 0)) < 0.3) big.X(s, 0) = 0.7;  // keep identification strong
    big.omegas[s] = std::min(big.omegas[s], 1.0);        // bound the filtered variance
  }
  const auto bpath = big.filter();
  const auto bsm = smooth_fixed_interval(bpath, big.Omega);
  for (int s = 0; s < 6; ++s) {
    CHECK((bsm[s].mean - bpath[s].filtered.mean).cwiseAbs().maxCoeff() < 1e-6);
    CHECK((bsm[s].cov - bpath[s].filtered.cov).cwiseAbs().maxCoeff() < 1e-6);
  }
}

TEST_CASE("ffbs draws match smoother moments and oracle autocovariance") {
  RngStream rng(57);
  auto in = random_instance(4, 1, 0.25, rng, 25.0);
  const auto path = in.filter();
  const auto smoothed = smooth_fixed_interval(path, in.Omega);
  const auto dense = in.dense();

  const int n = 10000;
  RngStream draw_rng(58);
  std::vector<Eigen::VectorXd> sums(4, Eigen::VectorXd::Zero(1));
  std::vector<double> lag1(n);
  std::vector<std::vector<double>> per_time(4, std::vector<double>(n));
  for (int i = 0; i < n; ++i) {
    const auto draw = draw_state_path(path, in.Omega, draw_rng);
    for (int s = 0; s < 4; ++s) {
      sums[s] += draw[s];
      per_time[s][i] = draw[s][0];
    }
  }
  for (int s = 0; s < 4; ++s) {
    const double se = std::sqrt(smoothed[s].cov(0, 0) / n);
    CHECK(std::abs(sums[s][0] / n - smoothed[s].mean[0]) < 3.5 * se);
    const double var_se = smoothed[s].cov(0, 0) * std::sqrt(2.0 / (n - 1));
    CHECK(std::abs(oracle::var_of(per_time[s]) - smoothed[s].cov(0, 0)) < 3.5 * var_se);
  }
  // lag-1 cross moment vs the dense joint
  for (int s = 0; s + 1 < 4; ++s) {
    double acc = 0.0;
    const double m1 = oracle::mean_of(per_time[s]), m2 = oracle::mean_of(per_time[s + 1]);
    for (int i = 0; i < n; ++i) acc += (per_time[s][i] - m1) * (per_time[s + 1][i] - m2);
    acc /= (n - 1);
    const double want = dense.cross(s, s + 1)(0, 0);
    const double sd = std::sqrt(dense.cov(s, s) * dense.cov(s + 1, s + 1));
    CHECK(std::abs(acc - want) < 4.0 * sd * std::sqrt(2.0 / n));
  }
}

TEST_CASE("ffbs with zero Omega draws a constant path") {
  RngStream rng(67);
  auto in = random_instance(5, 2, 0.5, rng);
  in.Omega = Eigen::MatrixXd::Zero(2, 2);
  const auto path = in.filter();
  RngStream draw_rng(68);
  const auto draw = draw_state_path(path, in.Omega, draw_rng);
  for (int s = 1; s < 5; ++s) {
    CHECK((draw[s] - draw[0]).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("fixed-lag smoother endpoints and equivalence") {
  RngStream rng(77);
  for (int rep = 0; rep < 10; ++rep) {
    auto in = random_instance(6, 2, 0.3, rng);
    const auto path = in.filter();
    const auto interval = smooth_fixed_interval(path, in.Omega);

    const GaussState h0 = smooth_fixed_lag(path, in.Omega, 0);
    CHECK((h0.mean - path[5].filtered.mean).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((h0.cov - path[5].filtered.cov).cwiseAbs().maxCoeff() < 1e-12);

    for (int h = 1; h <= 5; ++h) {
      const GaussState lag = smooth_fixed_lag(path, in.Omega, h);
      const int s = 5 - h;
      CHECK((lag.mean - interval[s].mean).cwiseAbs().maxCoeff() < 1e-10);
      CHECK((lag.cov - interval[s].cov).cwiseAbs().maxCoeff() < 1e-10);
    }
    CHECK_THROWS_AS(smooth_fixed_lag(path, in.Omega, 6), std::domain_error);
    CHECK_THROWS_AS(smooth_fixed_lag(path, in.Omega, -1), std::domain_error);
  }
}

TEST_CASE("conditioning on more data cannot inflate fixed-lag variance") {
  RngStream rng(87);
  auto in = random_instance(7, 2, 0.25, rng);
  const auto path = in.filter();
  for (int t = 1; t < 7; ++t) {
    const std::vector<KalmanStepResult> prefix(path.begin(), path.begin() + t + 1);
    const std::vector<KalmanStepResult> prev(path.begin(), path.begin() + t);
    const GaussState now = smooth_fixed_lag(prefix, in.Omega, 1);
    const GaussState before = smooth_fixed_lag(prev, in.Omega, 0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(before.cov - now.cov);
    CHECK(es.eigenvalues().minCoeff() > -1e-9);
  }
}

TEST_CASE("filter is invariant to regressor permutation") {
  RngStream rng(97);
  auto in = random_instance(6, 3, 0.35, rng);
  const auto path = in.filter();

  // Swap columns 0 and 2 along with the matching rows/cols of Omega.
  Eigen::PermutationMatrix<Eigen::Dynamic> P(3);
  P.setIdentity();
  P.applyTranspositionOnTheRight(0, 2);
  Instance perm = in;
  perm.X = in.X * P;
  perm.Omega = P.transpose() * in.Omega * P;
  const auto ppath = perm.filter();
  for (int s = 0; s < 6; ++s) {
    const Eigen::VectorXd back = P * ppath[s].filtered.mean;
    CHECK((back - path[s].filtered.mean).cwiseAbs().maxCoeff() < 1e-12);
    const Eigen::MatrixXd cov_back = P * ppath[s].filtered.cov * P.transpose();
    CHECK((cov_back - path[s].filtered.cov).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(ppath[s].predictive_variance ==
          doctest::Approx(path[s].predictive_variance).epsilon(1e-12));
  }
}

TEST_CASE("covariance outputs stay symmetric") {
  RngStream rng(107);
  auto in = random_instance(40, 3, 0.15, rng);
  const auto path = in.filter();
  const auto sm = smooth_fixed_interval(path, in.Omega);
  for (const auto& r : path) {
    CHECK((r.filtered.cov - r.filtered.cov.transpose()).cwiseAbs().maxCoeff() < 1e-10);
  }
  for (const auto& g : sm) {
    CHECK((g.cov - g.cov.transpose()).cwiseAbs().maxCoeff() < 1e-10);
  }
}

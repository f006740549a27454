#include "dqr/dgp.hpp"

#include <cmath>
#include <stdexcept>

#include "dqr/distributions.hpp"
#include "dqr/rng.hpp"

namespace dqr {

namespace {

// Covariates, responses, and storage shared by both designs.
DGPOutput allocate(int T, RngStream& rng) {
  if (T < 2) throw std::invalid_argument("simulate: need T >= 2");
  DGPOutput out;
  out.y.resize(T);
  out.x.resize(T, 3);
  out.beta_star.resize(T, 3);
  out.nu2.resize(T);
  out.x.col(0).setOnes();
  const double half = T / 2.0;
  for (int t = 0; t < T; ++t) {
    out.x(t, 1) = (2.0 * rng.uniform() - 1.0) * half;
    out.x(t, 2) = (2.0 * rng.uniform() - 1.0) * half;
  }
  return out;
}

void fill_y(DGPOutput& out, RngStream& rng) {
  for (int t = 0; t < out.y.size(); ++t) {
    out.y[t] = out.x.row(t).dot(out.beta_star.row(t)) +
               std::sqrt(out.nu2[t]) * rng.normal();
  }
}

}  // namespace

DGPOutput simulate_smooth(int T, std::uint64_t seed) {
  RngStream rng(seed);
  DGPOutput out = allocate(T, rng);
  const double a = 0.2, b = 2.0, c = 5.0;
  for (int i = 0; i < T; ++i) {
    const int t = i + 1;  // paths are stated with 1-based time
    out.beta_star(i, 0) = 2.0;
    out.beta_star(i, 1) =
        (t <= 100) ? 0.6 - 0.4 * t / 100.0 : -0.2 + 0.4 * t / 100.0;
    out.beta_star(i, 2) =
        a + b / (1.0 + std::exp(c * (2.0 * t - T - 2.0) / T));
    out.nu2[i] = (t <= 100) ? 1.0 : 0.25;
  }
  fill_y(out, rng);
  return out;
}

DGPOutput simulate_abrupt(int T, std::uint64_t seed) {
  RngStream rng(seed);
  DGPOutput out = allocate(T, rng);
  const double a = 0.05, b = 0.9, c = 0.05;
  for (int i = 0; i < T; ++i) {
    const int t = i + 1;
    out.beta_star(i, 0) = (t <= 100) ? -2.0 : 2.0;
    out.beta_star(i, 1) = (t <= 100) ? 1.6 : 0.8;
    out.beta_star(i, 2) = 2.0;
  }
  // GARCH(1,1) variance, started at the unconditional level a/(1-b-c).
  double nu2 = a / (1.0 - b - c);
  for (int i = 0; i < T; ++i) {
    out.nu2[i] = nu2;
    const double eps = std::sqrt(nu2) * rng.normal();
    out.y[i] = out.x.row(i).dot(out.beta_star.row(i)) + eps;
    nu2 = a + b * nu2 + c * eps * eps;
  }
  return out;
}

Eigen::MatrixXd true_quantile_path(const DGPOutput& out, double tau) {
  const double z = normal_quantile(tau);
  Eigen::MatrixXd path = out.beta_star;
  path.col(0) += z * out.nu2.cwiseSqrt();
  return path;
}

}  // namespace dqr

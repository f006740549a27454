#include "dqr/distributions.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace dqr {

namespace {
constexpr double kPi = 3.1415926535897932384626433832795;
constexpr double kSqrt2 = 1.4142135623730950488016887242097;

void check_symmetric(const Eigen::MatrixXd& a, const char* who) {
  if (a.rows() != a.cols()) throw std::domain_error(std::string(who) + ": matrix not square");
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
  if ((a - a.transpose()).cwiseAbs().maxCoeff() > 1e-8 * scale) {
    throw std::domain_error(std::string(who) + ": matrix not symmetric");
  }
}
}  // namespace

double sample_exponential(double rate, RngStream& rng) {
  if (!(rate > 0.0)) throw std::domain_error("sample_exponential: rate must be positive");
  return rng.exponential(rate);
}

double sample_inverse_gamma(double shape, double rate, RngStream& rng) {
  if (!(shape > 0.0) || !(rate > 0.0)) {
    throw std::domain_error("sample_inverse_gamma: parameters must be positive");
  }
  return rate / rng.gamma(shape);
}

double sample_inverse_gaussian(double mean, double shape, RngStream& rng) {
  if (!(mean > 0.0) || !(shape > 0.0)) {
    throw std::domain_error("sample_inverse_gaussian: parameters must be positive");
  }
  // Michael-Schucany-Haas: the smaller root of the quadratic in closed form,
  // written so that large mean/shape ratios do not cancel.
  const double z = rng.normal();
  const double u = mean * z * z / (2.0 * shape);
  const double x1 = mean / (1.0 + u + std::sqrt(u * (u + 2.0)));
  if (rng.uniform() <= mean / (mean + x1)) return x1;
  return mean * mean / x1;
}

Eigen::MatrixXd sample_inverse_wishart(double dof, const Eigen::MatrixXd& scale,
                                       RngStream& rng) {
  check_symmetric(scale, "sample_inverse_wishart");
  const int m = static_cast<int>(scale.rows());
  const double nu = 2.0 * dof;  // conventional degrees of freedom
  if (!(nu > m - 1)) {
    throw std::domain_error("sample_inverse_wishart: dof too small for dimension");
  }
  Eigen::LLT<Eigen::MatrixXd> llt(2.0 * scale);
  if (llt.info() != Eigen::Success) {
    throw std::domain_error("sample_inverse_wishart: scale not positive definite");
  }
  const Eigen::MatrixXd L = llt.matrixL();

  // Bartlett factor of a Wishart(nu, I) draw.
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    A(i, i) = std::sqrt(rng.chi_squared(nu - i));
    for (int j = 0; j < i; ++j) A(i, j) = rng.normal();
  }
  // X = L (A A')^-1 L' is inverse Wishart with scale 2*scale.
  const Eigen::MatrixXd Y =
      A.triangularView<Eigen::Lower>().solve(Eigen::MatrixXd(L.transpose()));
  Eigen::MatrixXd X = Y.transpose() * Y;
  X = 0.5 * (X + X.transpose()).eval();
  return X;
}

Eigen::VectorXd sample_mvn(const Eigen::VectorXd& mean, const Eigen::MatrixXd& cov,
                           RngStream& rng) {
  check_symmetric(cov, "sample_mvn");
  const int n = static_cast<int>(mean.size());
  if (cov.rows() != n) throw std::domain_error("sample_mvn: dimension mismatch");

  Eigen::VectorXd z(n);
  for (int i = 0; i < n; ++i) z[i] = rng.normal();

  Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() == Eigen::Success) {
    return mean + llt.matrixL() * z;
  }
  // Semidefinite (or mildly perturbed) covariance: square root via the
  // spectral decomposition, clipping eigenvalues in [-tol, 0) to zero.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double tol = 1e-10 * std::max(1.0, ev.cwiseAbs().maxCoeff());
  if (ev.minCoeff() < -tol) {
    throw std::domain_error("sample_mvn: covariance is indefinite");
  }
  const Eigen::VectorXd root = ev.cwiseMax(0.0).cwiseSqrt();
  return mean + es.eigenvectors() * root.asDiagonal() * z;
}

double normal_pdf(double x, double mean, double var) {
  return std::exp(normal_log_pdf(x, mean, var));
}

double normal_log_pdf(double x, double mean, double var) {
  if (!(var > 0.0)) throw std::domain_error("normal_log_pdf: variance must be positive");
  const double d = x - mean;
  return -0.5 * (std::log(2.0 * kPi * var) + d * d / var);
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / kSqrt2); }

double normal_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("normal_quantile: p must be in (0, 1)");
  // Acklam's rational approximation, then one Halley step against erfc.
  static const double a[6] = {-3.969683028665376e+01, 2.209460984245205e+02,
                              -2.759285104469687e+02, 1.383577518672690e+02,
                              -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[5] = {-5.447609879822406e+01, 1.615858368580409e+02,
                              -1.556989798598866e+02, 6.680131188771972e+01,
                              -1.328068155288572e+01};
  static const double c[6] = {-7.784894002430293e-03, -3.223964580411365e-01,
                              -2.400758277161838e+00, -2.549732539343734e+00,
                              4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[4] = {7.784695709041462e-03, 3.224671290700398e-01,
                              2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  double x;
  if (p < plow) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - plow) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double e = normal_cdf(x) - p;
  const double u = e * std::sqrt(2.0 * kPi) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

double inverse_gamma_log_pdf(double x, double shape, double rate) {
  if (!(shape > 0.0) || !(rate > 0.0)) {
    throw std::domain_error("inverse_gamma_log_pdf: parameters must be positive");
  }
  if (!(x > 0.0)) return -std::numeric_limits<double>::infinity();
  return shape * std::log(rate) - std::lgamma(shape) - (shape + 1.0) * std::log(x) -
         rate / x;
}

}  // namespace dqr

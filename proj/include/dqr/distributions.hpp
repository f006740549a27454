#pragma once

#include <Eigen/Dense>

#include "dqr/rng.hpp"

namespace dqr {

// Draw with mean 1/rate.
double sample_exponential(double rate, RngStream& rng);

// Inverse gamma with density proportional to x^-(shape+1) exp(-rate/x);
// mean rate/(shape-1) for shape > 1.
double sample_inverse_gamma(double shape, double rate, RngStream& rng);

// Inverse Gaussian (inverted normal) with mean `mean` and shape `shape`;
// variance mean^3/shape.
double sample_inverse_gaussian(double mean, double shape, RngStream& rng);

// Inverse Wishart in the density parameterization
//   p(X) ∝ |X|^-(dof + (M+1)/2) exp(-tr(scale X^-1)),
// i.e. a conventional IW with 2*dof degrees of freedom and scale matrix
// 2*scale. Mean is 2*scale/(2*dof - M - 1) when that is positive. Requires
// scale symmetric positive definite and 2*dof > M - 1.
Eigen::MatrixXd sample_inverse_wishart(double dof, const Eigen::MatrixXd& scale,
                                       RngStream& rng);

// Gaussian draw; cov must be symmetric positive semidefinite (eigenvalues
// below -1e-10 relative are rejected, small negatives are clipped to zero).
Eigen::VectorXd sample_mvn(const Eigen::VectorXd& mean, const Eigen::MatrixXd& cov,
                           RngStream& rng);

double normal_pdf(double x, double mean, double var);
double normal_log_pdf(double x, double mean, double var);
double normal_cdf(double z);
double normal_quantile(double p);

double inverse_gamma_log_pdf(double x, double shape, double rate);

}  // namespace dqr

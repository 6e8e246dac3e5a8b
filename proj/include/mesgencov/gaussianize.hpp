#pragma once

// Lambert W based Gaussianization of heavy-tailed residual columns
// (symmetric "h" type): z = u * exp(delta*u^2/2) * sigma + mu with u standard
// normal. Parameters are estimated by the iterative moment method, driving
// the back-transformed excess kurtosis to zero.

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "mesgencov/stattests.hpp"
#include "mesgencov/types.hpp"

namespace mesgencov {

// Principal branch of w * e^w = x, defined for x >= -1/e.
double lambert_w0(double x);

struct LambertWParams {
  double mu = 0.0;
  double sigma = 1.0;
  double delta = 0.0;
  bool converged = true;
  int iterations = 0;
};

struct GaussianizeResult {
  std::vector<double> transformed;  // missing entries pass through
  LambertWParams params;
};

GaussianizeResult gaussianize_h(const std::vector<double>& column);

struct LambertWTransformOutput {
  MvnReport mvn;
  Eigen::MatrixXd cov;
  Eigen::MatrixXd new_residuals;
  std::vector<UnivariateRow> univariate_test;
  std::vector<LambertWParams> column_params;
  std::vector<std::string> warnings;
};

// Column-wise gaussianization followed by covariance + normality reports on
// the transformed matrix. Requires >= 2 columns; missing entries allowed only
// if every column keeps >= 10 observed values.
LambertWTransformOutput lambertw_transform(const Eigen::MatrixXd& residuals,
                                           const std::vector<std::string>& names);

}  // namespace mesgencov

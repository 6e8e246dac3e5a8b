#pragma once

// Minimal SVG emission: per-site observed/fitted series plots and the
// chi-square QQ plot of squared Mahalanobis distances.

#include <Eigen/Dense>
#include <string>

#include "mesgencov/covariance.hpp"
#include "mesgencov/fit.hpp"

namespace mesgencov {

void plot_series(const FitResult& fit, const MonthlySeries& series, const std::string& path);

void plot_multivariate_qq(const ResidualMatrix& R, const std::string& path);

}  // namespace mesgencov

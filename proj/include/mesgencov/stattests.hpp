#pragma once

// Native statistical tests reported by the pipeline: Shapiro-Wilk normality
// (Royston's AS R94), Mardia multivariate skewness/kurtosis, the Rosner
// generalized-ESD outlier test, and the likelihood-ratio independence test.

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "mesgencov/types.hpp"

namespace mesgencov {

struct ShapiroWilkResult {
  double W = 0.0;
  double p_value = 0.0;
};

// 3 <= n <= 5000, nonzero variance.
ShapiroWilkResult shapiro_wilk(const std::vector<double>& x);

struct MardiaResult {
  double b1p = 0.0;        // multivariate skewness
  double b2p = 0.0;        // multivariate kurtosis
  double skew_stat = 0.0;  // ~ chi^2 with p(p+1)(p+2)/6 dof
  double skew_p = 0.0;
  double kurt_stat = 0.0;  // ~ N(0,1)
  double kurt_p = 0.0;
  bool skew_normal = false;  // p >= 0.05
  bool kurt_normal = false;
  bool mvn = false;  // both verdicts
};

MardiaResult mardia(const Eigen::MatrixXd& X);

struct DescriptiveRow {
  std::string variable;
  int n = 0;
  double mean = 0.0, std_dev = 0.0, median = 0.0, min = 0.0, max = 0.0;
  double q25 = 0.0, q75 = 0.0;
  double skew = 0.0, kurtosis = 0.0;  // moment skewness, excess kurtosis
};

std::vector<DescriptiveRow> descriptives(const Eigen::MatrixXd& X,
                                         const std::vector<std::string>& names);

struct UnivariateRow {
  std::string variable;
  double W = 0.0;
  double p_value = 0.0;
  bool normal = false;
};

struct MvnReport {
  MardiaResult multivariate;
  std::vector<UnivariateRow> univariate;
  std::vector<DescriptiveRow> descr;
};

MvnReport mvn_report(const Eigen::MatrixXd& X, const std::vector<std::string>& names);

struct RosnerRow {
  int i = 0;  // values removed before this step
  double mean_i = 0.0;
  double sd_i = 0.0;
  double value = 0.0;
  int obs_index = 0;  // index into the input array
  double R = 0.0;
  double lambda = 0.0;
  bool outlier = false;
};

struct RosnerReport {
  std::vector<RosnerRow> rows;
  std::vector<std::string> warnings;
};

// Critical value lambda_{i+1} for step i (0-based), sample size n, level alpha.
double rosner_lambda(int n, int i, double alpha);

RosnerReport rosner(const std::vector<double>& x, int max_outliers, double alpha = 0.05);

struct IndependenceReport {
  double u = 0.0;
  double threshold = 0.0;
  bool independent = false;
  int m = 0;
};

IndependenceReport independence_test(const Eigen::MatrixXd& residuals, double alpha = 0.05);

// Fixed-width text renderings mirroring the session output layout.
std::string render_mvn(const MvnReport& r);
std::string render_univariate(const std::vector<UnivariateRow>& rows);
std::string render_rosner(const RosnerReport& r);

}  // namespace mesgencov

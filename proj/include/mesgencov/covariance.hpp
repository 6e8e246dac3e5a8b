#pragma once

// Residual matrix assembly across sites and sample covariance.

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "mesgencov/fit.hpp"
#include "mesgencov/types.hpp"

namespace mesgencov {

struct ResidualMatrix {
  std::vector<std::string> column_names;  // "<site><chemical>" labels
  Eigen::MatrixXd values;                 // T x m; kMissing allowed in the NA variant
  bool imputed = false;

  int T() const { return static_cast<int>(values.rows()); }
  int m() const { return static_cast<int>(values.cols()); }
};

struct SiteResiduals {
  SiteId site;
  Chemical chemical;
  std::vector<double> raw;      // with missing
  std::vector<double> imputed;  // complete
};

// Builds both variants; all inputs must share T. Column order follows input.
std::pair<ResidualMatrix, ResidualMatrix> assemble(const std::vector<SiteResiduals>& per_site);

// Unbiased (n-1 denominator) covariance of a complete residual matrix.
Eigen::MatrixXd sample_covariance(const ResidualMatrix& R);
Eigen::MatrixXd sample_covariance(const Eigen::MatrixXd& values);

void write_cov_csv(const Eigen::MatrixXd& C, const std::vector<std::string>& labels,
                   const std::string& path);

// Header + numeric rows; "NA", "" and negative-sentinel-free. NA -> missing.
struct LabeledMatrix {
  std::vector<std::string> labels;
  Eigen::MatrixXd values;
};
LabeledMatrix read_labeled_csv(const std::string& path);
void write_labeled_csv(const Eigen::MatrixXd& M, const std::vector<std::string>& labels,
                       const std::string& path);

}  // namespace mesgencov

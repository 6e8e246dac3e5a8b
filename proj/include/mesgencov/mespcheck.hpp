#pragma once

// Validator for produced covariance matrices as maximum-entropy sampling
// inputs: principal-submatrix log-determinants and a greedy + 1-swap
// interchange heuristic for the best subset of a given size.

#include <Eigen/Dense>
#include <vector>

#include "mesgencov/types.hpp"

namespace mesgencov {

struct MespInstance {
  Eigen::MatrixXd C;  // symmetric PSD (tiny negative eigenvalues clipped)
  int s = 1;          // subset size, 0 < s < n
};

// Clips eigenvalues in [-1e-10, 0) to 0; more negative values are an error.
Eigen::MatrixXd psd_repair(const Eigen::MatrixXd& C);

// log det C[S,S] via Cholesky; -inf if singular.
double logdet_subset(const Eigen::MatrixXd& C, const std::vector<int>& S);

struct MespSolution {
  std::vector<int> subset;  // sorted
  double value = 0.0;
};

MespSolution greedy_interchange(const MespInstance& inst);

}  // namespace mesgencov

#pragma once

// Minimal MAT-file v5 support: one uncompressed little-endian miMATRIX double
// array per file. Enough for MATLAB's `load` and for round-trip validation.

#include <Eigen/Dense>
#include <string>

#include "mesgencov/types.hpp"

namespace mesgencov {

// Writes `M` as a real double array named `var_name` (default "cov").
void write_mat(const Eigen::MatrixXd& M, const std::string& path,
               const std::string& var_name = "cov");

struct MatArray {
  std::string name;
  Eigen::MatrixXd values;
};

// Reads the first miMATRIX element of an uncompressed v5 file.
MatArray read_mat(const std::string& path);

}  // namespace mesgencov

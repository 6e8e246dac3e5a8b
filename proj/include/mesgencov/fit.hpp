#pragma once

// Per-site log-concentration trend model: polynomial in t of degree r plus a
// truncated Fourier series at harmonics j = 1..k with a 12-month period,
// fit by ordinary least squares on log y(t).

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "mesgencov/aggregate.hpp"
#include "mesgencov/types.hpp"

namespace mesgencov {

struct ModelSpec {
  int r = 1;  // polynomial degree, 0..5
  int k = 1;  // Fourier truncation, 0..5
  static constexpr double period = 12.0;

  int n_params() const { return r + 1 + 2 * k; }
  void validate() const {
    if (r < 0 || r > 5) throw DataError("r must be an integer in 0..5");
    if (k < 0 || k > 5) throw DataError("k must be an integer in 0..5");
  }
};

struct CoeffStat {
  std::string name;
  double estimate = 0.0;
  double std_error = 0.0;
  double t_value = 0.0;
  double p_value = 0.0;
};

struct FitResult {
  SiteId site;
  ModelSpec spec;
  Eigen::VectorXd coeffs;            // beta_0..beta_r, a_1, b_1, ..., a_k, b_k
  std::vector<double> residuals;     // per t; kMissing where y(t) missing
  std::vector<double> fitted;        // per t; defined for all t
  std::vector<double> observed_log;  // log y(t); kMissing where missing
  double residual_std_error = 0.0;
  std::vector<CoeffStat> coeff_table;
  double r_squared = 0.0;
  double adj_r_squared = 0.0;
  double f_statistic = 0.0;
  double f_p_value = 1.0;
  int n_obs = 0;
  int dof = 0;
};

// T x (r+1+2k) design; columns t^0..t^r then cos/sin pairs, t = 0..T-1.
Eigen::MatrixXd design_matrix(int T, const ModelSpec& spec);

// OLS on log y(t) over the non-missing months; fitted values for all t.
FitResult fit_ols(const MonthlySeries& series, const ModelSpec& spec);

// Residual vector with missing months replaced by Normal(0, sigma^2) draws.
std::vector<double> impute_residuals(const FitResult& fit, std::uint64_t rng_seed);

// Human-readable summary table (coefficients, stars, quartiles, R^2, F).
std::string summarize(const FitResult& fit);

}  // namespace mesgencov

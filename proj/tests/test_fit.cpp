#include <cmath>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "mesgencov/fit.hpp"

using namespace mesgencov;

namespace {

MonthlySeries make_series(const std::vector<double>& values) {
  MonthlySeries s;
  s.site = SiteId("NY52");
  s.chemical = Chemical::SO4;
  s.start_yrmonth = 198301;
  s.values = values;
  return s;
}

// Normal-equation oracle: beta = (X'X)^-1 X'y on observed rows only.
Eigen::VectorXd normal_equation_fit(const MonthlySeries& s, const ModelSpec& spec) {
  const Eigen::MatrixXd X_full = design_matrix(s.T(), spec);
  std::vector<int> rows;
  for (int t = 0; t < s.T(); ++t)
    if (!is_missing(s.values[t])) rows.push_back(t);
  Eigen::MatrixXd X(rows.size(), X_full.cols());
  Eigen::VectorXd y(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    X.row(i) = X_full.row(rows[i]);
    y(i) = std::log(s.values[rows[i]]);
  }
  return (X.transpose() * X).ldlt().solve(X.transpose() * y);
}

}  // namespace

TEST_CASE("design matrix shapes and exact entries") {
  auto M = design_matrix(3, ModelSpec{0, 0});
  REQUIRE(M.rows() == 3);
  REQUIRE(M.cols() == 1);
  CHECK(M(0, 0) == 1.0);
  CHECK(M(2, 0) == 1.0);

  auto M2 = design_matrix(12, ModelSpec{1, 1});
  REQUIRE(M2.cols() == 4);
  // Row t=3: [1, 3, cos(pi/2)=0, sin(pi/2)=1].
  CHECK(M2(3, 0) == doctest::Approx(1.0));
  CHECK(M2(3, 1) == doctest::Approx(3.0));
  CHECK(M2(3, 2) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(M2(3, 3) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("noiseless exponential trend recovered to machine precision") {
  std::vector<double> y(48);
  for (int t = 0; t < 48; ++t) y[t] = std::exp(1.0 + 0.01 * t);
  auto fit = fit_ols(make_series(y), ModelSpec{1, 0});
  CHECK(fit.coeffs(0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fit.coeffs(1) == doctest::Approx(0.01).epsilon(1e-10));
  for (int t = 0; t < 48; ++t) CHECK(std::abs(fit.residuals[t]) < 1e-10);
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("coefficients match the normal-equation oracle") {
  std::mt19937_64 gen(99);
  std::normal_distribution<double> noise(0.0, 0.15);
  std::uniform_int_distribution<int> rk(0, 3);
  for (int trial = 0; trial < 50; ++trial) {
    const ModelSpec spec{rk(gen), rk(gen)};
    const int T = 72;
    std::vector<double> y(T);
    for (int t = 0; t < T; ++t)
      y[t] = std::exp(0.3 + 0.005 * t + 0.2 * std::cos(2 * M_PI * t / 12.0) + noise(gen));
    auto s = make_series(y);
    auto fit = fit_ols(s, spec);
    auto oracle = normal_equation_fit(s, spec);
    for (int j = 0; j < oracle.size(); ++j)
      CHECK(fit.coeffs(j) ==
            doctest::Approx(oracle(j)).epsilon(1e-8));
  }
}

TEST_CASE("residuals orthogonal to every design column") {
  std::mt19937_64 gen(5);
  std::normal_distribution<double> noise(0.0, 0.2);
  std::vector<double> y(72);
  for (int t = 0; t < 72; ++t) y[t] = std::exp(0.5 + noise(gen));
  auto s = make_series(y);
  const ModelSpec spec{2, 2};
  auto fit = fit_ols(s, spec);
  const Eigen::MatrixXd X = design_matrix(72, spec);
  Eigen::VectorXd e(72), ly(72);
  for (int t = 0; t < 72; ++t) {
    e(t) = fit.residuals[t];
    ly(t) = std::log(y[t]);
  }
  const double bound = 1e-8 * ly.norm();
  CHECK((X.transpose() * e).cwiseAbs().maxCoeff() < bound);
}

TEST_CASE("adding a Fourier pair never increases RSS") {
  std::mt19937_64 gen(17);
  std::normal_distribution<double> noise(0.0, 0.3);
  std::vector<double> y(60);
  for (int t = 0; t < 60; ++t) y[t] = std::exp(noise(gen));
  auto s = make_series(y);
  double prev_rss = 1e300;
  for (int k = 0; k <= 4; ++k) {
    auto fit = fit_ols(s, ModelSpec{1, k});
    double rss = 0;
    for (double e : fit.residuals)
      if (!is_missing(e)) rss += e * e;
    CHECK(rss <= prev_rss + 1e-10);
    prev_rss = rss;
  }
}

TEST_CASE("missing months dropped from regression, fitted for all t") {
  std::vector<double> y(36);
  for (int t = 0; t < 36; ++t) y[t] = std::exp(1.0 + 0.02 * t);
  y[5] = kMissing;
  y[20] = kMissing;
  auto fit = fit_ols(make_series(y), ModelSpec{1, 0});
  CHECK(fit.n_obs == 34);
  CHECK(is_missing(fit.residuals[5]));
  CHECK(is_missing(fit.residuals[20]));
  CHECK(fit.fitted.size() == 36);
  CHECK(fit.fitted[5] == doctest::Approx(1.0 + 0.02 * 5).epsilon(1e-8));
  CHECK(fit.dof == 34 - 2);
}

TEST_CASE("error cases") {
  // Too few observations.
  std::vector<double> y(4, kMissing);
  y[0] = 1.0;
  y[1] = 2.0;
  CHECK_THROWS_AS(fit_ols(make_series(y), ModelSpec{1, 1}), DataError);

  // Rank-deficient: only months where sin(2*pi*t/12) = 0 observed.
  std::vector<double> y2(37, kMissing);
  for (int t = 0; t <= 36; t += 6) y2[t] = std::exp(1.0 + 0.01 * t);
  CHECK_THROWS_AS(fit_ols(make_series(y2), ModelSpec{0, 1}), NumericError);
}

TEST_CASE("imputation is the identity without missing months") {
  std::vector<double> y(24);
  for (int t = 0; t < 24; ++t) y[t] = std::exp(0.2 + 0.05 * std::sin(t));
  auto fit = fit_ols(make_series(y), ModelSpec{1, 1});
  auto imp = impute_residuals(fit, 12345);
  REQUIRE(imp.size() == fit.residuals.size());
  for (size_t t = 0; t < imp.size(); ++t) CHECK(imp[t] == fit.residuals[t]);
}

TEST_CASE("imputation draws have the right scale") {
  FitResult fit;
  fit.residuals.assign(10000, kMissing);
  fit.residual_std_error = 0.7;
  auto imp = impute_residuals(fit, 2024);
  double sum = 0, sum2 = 0;
  for (double v : imp) {
    CHECK(!is_missing(v));
    sum += v;
    sum2 += v * v;
  }
  const int n = static_cast<int>(imp.size());
  const double mean = sum / n;
  const double sd = std::sqrt(sum2 / n - mean * mean);
  const double tol = 5.0 * 0.7 / std::sqrt(static_cast<double>(n));
  CHECK(std::abs(mean) < tol);
  CHECK(std::abs(sd - 0.7) < 5.0 * 0.7 / std::sqrt(2.0 * n));

  // Determinism.
  auto imp2 = impute_residuals(fit, 2024);
  CHECK(imp == imp2);
  auto imp3 = impute_residuals(fit, 2025);
  CHECK(imp != imp3);
}

TEST_CASE("summary text layout") {
  std::mt19937_64 gen(3);
  std::normal_distribution<double> noise(0.0, 0.05);
  std::vector<double> y(72);
  for (int t = 0; t < 72; ++t)
    y[t] = std::exp(1.0 + 0.01 * t + 0.5 * std::cos(2 * M_PI * t / 12.0) + noise(gen));
  auto fit = fit_ols(make_series(y), ModelSpec{1, 1});
  const std::string text = summarize(fit);
  CHECK(text.find("degrees of freedom") != std::string::npos);
  CHECK(text.find("***") != std::string::npos);  // strong trend coefficients
  CHECK(text.find("(Intercept)") != std::string::npos);
  CHECK(text.find("Multiple R-squared") != std::string::npos);

  // Intercept-only fit still renders.
  auto fit0 = fit_ols(make_series(std::vector<double>(12, 2.0)), ModelSpec{0, 0});
  CHECK(summarize(fit0).find("(Intercept)") != std::string::npos);
}

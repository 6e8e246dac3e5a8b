#include "mesgencov/fit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "mesgencov/rng.hpp"
#include "mesgencov/special.hpp"

namespace mesgencov {

namespace {

std::vector<std::string> column_names(const ModelSpec& spec) {
  std::vector<std::string> names;
  names.push_back("(Intercept)");
  for (int i = 1; i <= spec.r; ++i)
    names.push_back(i == 1 ? "t" : "t^" + std::to_string(i));
  for (int j = 1; j <= spec.k; ++j) {
    const std::string h = j == 1 ? "" : "*" + std::to_string(j);
    names.push_back("cos(2*pi*t" + h + "/12)");
    names.push_back("sin(2*pi*t" + h + "/12)");
  }
  return names;
}

}  // namespace

Eigen::MatrixXd design_matrix(int T, const ModelSpec& spec) {
  spec.validate();
  if (T < 1) throw DataError("design_matrix: T must be >= 1");
  const int p = spec.n_params();
  if (T <= p) throw DataError("design_matrix: T must exceed parameter count " +
                              std::to_string(p));
  Eigen::MatrixXd X(T, p);
  for (int t = 0; t < T; ++t) {
    int c = 0;
    double pw = 1.0;
    for (int i = 0; i <= spec.r; ++i) {
      X(t, c++) = pw;
      pw *= t;
    }
    for (int j = 1; j <= spec.k; ++j) {
      const double ang = 2.0 * M_PI * j * t / ModelSpec::period;
      X(t, c++) = std::cos(ang);
      X(t, c++) = std::sin(ang);
    }
  }
  return X;
}

FitResult fit_ols(const MonthlySeries& series, const ModelSpec& spec) {
  spec.validate();
  const int T = series.T();
  const int p = spec.n_params();
  if (T <= p) throw DataError("fit_ols: series too short for model");
  const Eigen::MatrixXd Xfull = design_matrix(T, spec);

  std::vector<int> obs_rows;
  for (int t = 0; t < T; ++t) {
    const double y = series.values[t];
    if (is_missing(y)) continue;
    if (!(y > 0.0))
      throw DataError("fit_ols: non-positive concentration at month " + std::to_string(t));
    obs_rows.push_back(t);
  }
  const int n = static_cast<int>(obs_rows.size());
  if (n <= p)
    throw DataError("fit_ols: only " + std::to_string(n) + " observed months for " +
                    std::to_string(p) + " parameters");

  Eigen::MatrixXd X(n, p);
  Eigen::VectorXd y(n);
  for (int i = 0; i < n; ++i) {
    X.row(i) = Xfull.row(obs_rows[i]);
    y(i) = std::log(series.values[obs_rows[i]]);
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  qr.setThreshold(1e-10);
  if (qr.rank() < p) {
    const auto names = column_names(spec);
    std::string msg = "fit_ols: rank-deficient design (rank " + std::to_string(qr.rank()) +
                      " of " + std::to_string(p) + "), columns:";
    for (const auto& nm : names) msg += " " + nm;
    throw NumericError(msg);
  }
  const Eigen::VectorXd beta = qr.solve(y);

  FitResult fr;
  fr.site = series.site;
  fr.spec = spec;
  fr.coeffs = beta;
  fr.n_obs = n;
  fr.dof = n - p;

  const Eigen::VectorXd fitted_all = Xfull * beta;
  fr.fitted.assign(T, 0.0);
  fr.residuals.assign(T, kMissing);
  fr.observed_log.assign(T, kMissing);
  for (int t = 0; t < T; ++t) fr.fitted[t] = fitted_all(t);
  double rss = 0.0;
  for (int i = 0; i < n; ++i) {
    const int t = obs_rows[i];
    fr.observed_log[t] = y(i);
    const double e = y(i) - fitted_all(t);
    fr.residuals[t] = e;
    rss += e * e;
  }
  fr.residual_std_error = std::sqrt(rss / fr.dof);

  // (X'X)^{-1} via the QR factors: X P = Q R  =>  (X'X)^{-1} = P R^{-1} R^{-T} P'.
  const Eigen::MatrixXd R =
      qr.matrixR().topLeftCorner(p, p).template triangularView<Eigen::Upper>();
  const Eigen::MatrixXd Rinv =
      R.triangularView<Eigen::Upper>().solve(Eigen::MatrixXd::Identity(p, p));
  Eigen::MatrixXd xtx_inv = Rinv * Rinv.transpose();
  const Eigen::MatrixXd P = qr.colsPermutation();
  xtx_inv = P * xtx_inv * P.transpose();

  const auto names = column_names(spec);
  const double sigma2 = fr.residual_std_error * fr.residual_std_error;
  for (int j = 0; j < p; ++j) {
    CoeffStat cs;
    cs.name = names[j];
    cs.estimate = beta(j);
    cs.std_error = std::sqrt(sigma2 * xtx_inv(j, j));
    cs.t_value = cs.estimate / cs.std_error;
    cs.p_value = 2.0 * (1.0 - special::t_cdf(std::fabs(cs.t_value), fr.dof));
    fr.coeff_table.push_back(cs);
  }

  const double ybar = y.mean();
  double tss = 0.0;
  for (int i = 0; i < n; ++i) tss += (y(i) - ybar) * (y(i) - ybar);
  if (p > 1 && tss > 0.0) {
    fr.r_squared = 1.0 - rss / tss;
    fr.adj_r_squared = 1.0 - (rss / fr.dof) / (tss / (n - 1));
    fr.f_statistic = ((tss - rss) / (p - 1)) / (rss / fr.dof);
    const double x = fr.dof / (fr.dof + (p - 1) * fr.f_statistic);
    fr.f_p_value = special::inc_beta(fr.dof / 2.0, (p - 1) / 2.0, x);
  }
  return fr;
}

std::vector<double> impute_residuals(const FitResult& fit, std::uint64_t rng_seed) {
  Rng rng(rng_seed);
  std::vector<double> out(fit.residuals.size());
  for (size_t t = 0; t < out.size(); ++t) {
    out[t] = is_missing(fit.residuals[t]) ? rng.normal() * fit.residual_std_error
                                          : fit.residuals[t];
  }
  return out;
}

namespace {

const char* stars(double p) {
  if (p < 0.001) return "***";
  if (p < 0.01) return "**";
  if (p < 0.05) return "*";
  if (p < 0.1) return ".";
  return "";
}

double quantile7(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double h = (v.size() - 1) * q;
  const size_t lo = static_cast<size_t>(h);
  if (lo + 1 >= v.size()) return v.back();
  return v[lo] + (h - lo) * (v[lo + 1] - v[lo]);
}

std::string fmt_p(double p) {
  char buf[32];
  if (p < 2e-16) return "< 2e-16";
  if (p < 1e-4) {
    std::snprintf(buf, sizeof(buf), "%.3g", p);
  } else {
    std::snprintf(buf, sizeof(buf), "%.4f", p);
  }
  return buf;
}

}  // namespace

std::string summarize(const FitResult& fit) {
  std::ostringstream os;
  char buf[256];
  os << "Site: " << fit.site.str() << "   model: r = " << fit.spec.r << ", k = " << fit.spec.k
     << "\n\n";

  std::vector<double> res;
  for (double e : fit.residuals)
    if (!is_missing(e)) res.push_back(e);
  os << "Residuals:\n    Min      1Q  Median      3Q     Max\n";
  std::snprintf(buf, sizeof(buf), "%7.4f %7.4f %7.4f %7.4f %7.4f\n\n",
                *std::min_element(res.begin(), res.end()), quantile7(res, 0.25),
                quantile7(res, 0.5), quantile7(res, 0.75),
                *std::max_element(res.begin(), res.end()));
  os << buf;

  os << "Coefficients:\n";
  size_t w = 12;
  for (const auto& c : fit.coeff_table) w = std::max(w, c.name.size());
  std::snprintf(buf, sizeof(buf), "%-*s %10s %10s %8s %10s\n", static_cast<int>(w), "",
                "Estimate", "Std. Error", "t value", "Pr(>|t|)");
  os << buf;
  for (const auto& c : fit.coeff_table) {
    std::snprintf(buf, sizeof(buf), "%-*s %10.4f %10.4f %8.2f %10s %s\n", static_cast<int>(w),
                  c.name.c_str(), c.estimate, c.std_error, c.t_value, fmt_p(c.p_value).c_str(),
                  stars(c.p_value));
    os << buf;
  }
  os << "---\nSignif. codes: 0 '***' 0.001 '**' 0.01 '*' 0.05 '.' 0.1 ' ' 1\n\n";

  std::snprintf(buf, sizeof(buf), "Residual standard error: %.4f on %d degrees of freedom\n",
                fit.residual_std_error, fit.dof);
  os << buf;
  if (fit.coeff_table.size() > 1) {
    std::snprintf(buf, sizeof(buf),
                  "Multiple R-squared: %.4f,\tAdjusted R-squared: %.4f\n"
                  "F-statistic: %.4g on %d and %d DF,  p-value: %s\n",
                  fit.r_squared, fit.adj_r_squared, fit.f_statistic,
                  static_cast<int>(fit.coeff_table.size()) - 1, fit.dof,
                  fmt_p(fit.f_p_value).c_str());
    os << buf;
  }
  return os.str();
}

}  // namespace mesgencov

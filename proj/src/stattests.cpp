#include "mesgencov/stattests.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "mesgencov/special.hpp"

namespace mesgencov {

namespace {

double poly(const double* c, int n, double x) {
  double v = c[n - 1];
  for (int i = n - 2; i >= 0; --i) v = v * x + c[i];
  return v;
}

std::vector<double> drop_missing(const std::vector<double>& x) {
  std::vector<double> v;
  v.reserve(x.size());
  for (double a : x)
    if (!is_missing(a)) v.push_back(a);
  return v;
}

double quantile7(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double h = (v.size() - 1) * q;
  const size_t lo = static_cast<size_t>(h);
  if (lo + 1 >= v.size()) return v.back();
  return v[lo] + (h - lo) * (v[lo + 1] - v[lo]);
}

}  // namespace

ShapiroWilkResult shapiro_wilk(const std::vector<double>& input) {
  std::vector<double> x = drop_missing(input);
  const int n = static_cast<int>(x.size());
  if (n < 3 || n > 5000) throw DataError("shapiro_wilk: n must be in 3..5000");
  std::sort(x.begin(), x.end());
  if (x.front() == x.back()) throw NumericError("shapiro_wilk: zero variance");

  // Royston (1995), AS R94. Expected normal order statistics via Blom scores,
  // weights from the polynomial-adjusted approximation.
  std::vector<double> m(n);
  double ssumm2 = 0.0;
  for (int i = 0; i < n; ++i) {
    m[i] = special::norm_quantile((i + 1 - 0.375) / (n + 0.25));
    ssumm2 += m[i] * m[i];
  }
  const double rsn = 1.0 / std::sqrt(static_cast<double>(n));
  static const double c1[6] = {0.0, 0.221157, -0.147981, -2.071190, 4.434685, -2.706056};
  static const double c2[6] = {0.0, 0.042981, -0.293762, -1.752461, 5.682633, -3.582633};

  std::vector<double> a(n);
  if (n == 3) {
    a[0] = -std::sqrt(0.5);
    a[1] = 0.0;
    a[2] = std::sqrt(0.5);
  } else {
    const double an = m[n - 1] / std::sqrt(ssumm2) + poly(c1, 6, rsn);
    double phi;
    int fixed = 1;
    double an1 = 0.0;
    if (n > 5) {
      an1 = m[n - 2] / std::sqrt(ssumm2) + poly(c2, 6, rsn);
      fixed = 2;
      phi = (ssumm2 - 2.0 * m[n - 1] * m[n - 1] - 2.0 * m[n - 2] * m[n - 2]) /
            (1.0 - 2.0 * an * an - 2.0 * an1 * an1);
    } else {
      phi = (ssumm2 - 2.0 * m[n - 1] * m[n - 1]) / (1.0 - 2.0 * an * an);
    }
    a[n - 1] = an;
    a[0] = -an;
    if (fixed == 2) {
      a[n - 2] = an1;
      a[1] = -an1;
    }
    const double sp = std::sqrt(phi);
    for (int i = fixed; i < n - fixed; ++i) a[i] = m[i] / sp;
  }

  const double xbar = std::accumulate(x.begin(), x.end(), 0.0) / n;
  double num = 0.0, den = 0.0;
  for (int i = 0; i < n; ++i) {
    num += a[i] * x[i];
    den += (x[i] - xbar) * (x[i] - xbar);
  }
  ShapiroWilkResult res;
  res.W = num * num / den;
  if (res.W > 1.0) res.W = 1.0;

  if (n == 3) {
    const double pi6 = 6.0 / M_PI;
    const double stqr = std::asin(std::sqrt(0.75));
    double p = pi6 * (std::asin(std::sqrt(res.W)) - stqr);
    res.p_value = std::clamp(p, 0.0, 1.0);
  } else if (n <= 11) {
    const double g = -2.273 + 0.459 * n;
    const double w = -std::log(g - std::log1p(-res.W));
    const double mu = 0.5440 - 0.39978 * n + 0.025054 * n * n - 0.0006714 * n * n * n;
    const double sigma = std::exp(1.3822 - 0.77857 * n + 0.062767 * n * n - 0.0020322 * n * n * n);
    res.p_value = 1.0 - special::norm_cdf((w - mu) / sigma);
  } else {
    const double ln = std::log(static_cast<double>(n));
    const double w = std::log1p(-res.W);
    const double mu = -1.5861 - 0.31082 * ln - 0.083751 * ln * ln + 0.0038915 * ln * ln * ln;
    const double sigma = std::exp(-0.4803 - 0.082676 * ln + 0.0030302 * ln * ln);
    res.p_value = 1.0 - special::norm_cdf((w - mu) / sigma);
  }
  return res;
}

MardiaResult mardia(const Eigen::MatrixXd& X) {
  const int n = static_cast<int>(X.rows());
  const int p = static_cast<int>(X.cols());
  if (n <= p) throw DataError("mardia: requires n > p");

  const Eigen::RowVectorXd mean = X.colwise().mean();
  const Eigen::MatrixXd Xc = X.rowwise() - mean;
  // Population (1/n) covariance, as the Mardia moments are defined.
  const Eigen::MatrixXd S = (Xc.transpose() * Xc) / n;
  Eigen::LDLT<Eigen::MatrixXd> ldlt(S);
  if (ldlt.info() != Eigen::Success || (ldlt.vectorD().array() <= 0.0).any())
    throw NumericError("mardia: singular sample covariance");
  const Eigen::MatrixXd M = Xc * ldlt.solve(Xc.transpose());

  MardiaResult r;
  r.b1p = M.array().cube().sum() / (static_cast<double>(n) * n);
  r.b2p = M.diagonal().array().square().sum() / n;

  // Small-sample moment corrections keep the null p-values calibrated at the
  // sample sizes this pipeline sees (n ~ 50-150).
  const double dn = n, dp = p;
  const double k_corr = (dp + 1.0) * (dn + 1.0) * (dn + 3.0) / (dn * ((dn + 1.0) * (dp + 1.0) - 6.0));
  const double dof = dp * (dp + 1.0) * (dp + 2.0) / 6.0;
  r.skew_stat = dn * k_corr * r.b1p / 6.0;
  r.skew_p = 1.0 - special::chisq_cdf(r.skew_stat, dof);

  const double mean_b2 = dp * (dp + 2.0) * (dn - 1.0) / (dn + 1.0);
  const double var_b2 = 8.0 * dp * (dp + 2.0) * (dn - 3.0) * (dn - dp - 1.0) * (dn - dp + 1.0) /
                        ((dn + 1.0) * (dn + 1.0) * (dn + 3.0) * (dn + 5.0));
  r.kurt_stat = (r.b2p - mean_b2) / std::sqrt(var_b2);
  r.kurt_p = 2.0 * (1.0 - special::norm_cdf(std::fabs(r.kurt_stat)));

  r.skew_normal = r.skew_p >= 0.05;
  r.kurt_normal = r.kurt_p >= 0.05;
  r.mvn = r.skew_normal && r.kurt_normal;
  return r;
}

std::vector<DescriptiveRow> descriptives(const Eigen::MatrixXd& X,
                                         const std::vector<std::string>& names) {
  if (X.cols() < 1) throw DataError("descriptives: at least one column required");
  std::vector<DescriptiveRow> out;
  for (int c = 0; c < X.cols(); ++c) {
    std::vector<double> v;
    for (int i = 0; i < X.rows(); ++i)
      if (!is_missing(X(i, c))) v.push_back(X(i, c));
    DescriptiveRow d;
    d.variable = c < static_cast<int>(names.size()) ? names[c] : "V" + std::to_string(c + 1);
    d.n = static_cast<int>(v.size());
    const double n = static_cast<double>(v.size());
    d.mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
    double m2 = 0.0, m3 = 0.0, m4 = 0.0, ss = 0.0;
    for (double a : v) {
      const double e = a - d.mean;
      m2 += e * e;
      m3 += e * e * e;
      m4 += e * e * e * e;
      ss += e * e;
    }
    m2 /= n;
    m3 /= n;
    m4 /= n;
    d.std_dev = v.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
    d.median = quantile7(v, 0.5);
    d.min = *std::min_element(v.begin(), v.end());
    d.max = *std::max_element(v.begin(), v.end());
    d.q25 = quantile7(v, 0.25);
    d.q75 = quantile7(v, 0.75);
    d.skew = m2 > 0.0 ? m3 / std::pow(m2, 1.5) : 0.0;
    d.kurtosis = m2 > 0.0 ? m4 / (m2 * m2) - 3.0 : 0.0;
    out.push_back(d);
  }
  return out;
}

MvnReport mvn_report(const Eigen::MatrixXd& X, const std::vector<std::string>& names) {
  MvnReport rep;
  rep.multivariate = mardia(X);
  for (int c = 0; c < X.cols(); ++c) {
    std::vector<double> v(X.rows());
    for (int i = 0; i < X.rows(); ++i) v[i] = X(i, c);
    const auto sw = shapiro_wilk(v);
    UnivariateRow row;
    row.variable = c < static_cast<int>(names.size()) ? names[c] : "V" + std::to_string(c + 1);
    row.W = sw.W;
    row.p_value = sw.p_value;
    row.normal = sw.p_value >= 0.05;
    rep.univariate.push_back(row);
  }
  rep.descr = descriptives(X, names);
  return rep;
}

double rosner_lambda(int n, int i, double alpha) {
  const int nu = n - i - 2;
  if (nu < 1) throw DataError("rosner_lambda: too few observations");
  const double p = 1.0 - alpha / (2.0 * (n - i));
  const double t = special::t_quantile(p, nu);
  return (n - i - 1.0) * t / std::sqrt((nu + t * t) * (n - i + 0.0));
}

RosnerReport rosner(const std::vector<double>& input, int max_outliers, double alpha) {
  if (max_outliers < 1) throw DataError("rosner: max_outliers must be >= 1");
  std::vector<std::pair<double, int>> sample;  // (value, original index)
  for (size_t i = 0; i < input.size(); ++i)
    if (!is_missing(input[i])) sample.emplace_back(input[i], static_cast<int>(i));

  RosnerReport rep;
  const int n = static_cast<int>(sample.size());
  if (n < 15)
    rep.warnings.push_back("rosner: n = " + std::to_string(n) +
                           " is below the recommended minimum of 15");
  if (n - max_outliers < 3) throw DataError("rosner: too few observations for requested m");

  for (int i = 0; i < max_outliers; ++i) {
    const int ni = static_cast<int>(sample.size());
    double mean = 0.0;
    for (const auto& [v, idx] : sample) mean += v;
    mean /= ni;
    double ss = 0.0;
    for (const auto& [v, idx] : sample) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / (ni - 1));
    if (sd == 0.0) {
      rep.warnings.push_back("rosner: zero standard deviation at step " + std::to_string(i) +
                             "; stopping early");
      break;
    }
    size_t arg = 0;
    double best = -1.0;
    for (size_t j = 0; j < sample.size(); ++j) {
      const double r = std::fabs(sample[j].first - mean) / sd;
      if (r > best) {
        best = r;
        arg = j;
      }
    }
    RosnerRow row;
    row.i = i;
    row.mean_i = mean;
    row.sd_i = sd;
    row.value = sample[arg].first;
    row.obs_index = sample[arg].second;
    row.R = best;
    row.lambda = rosner_lambda(n, i, alpha);
    rep.rows.push_back(row);
    sample.erase(sample.begin() + arg);
  }

  // ESD rule: the largest step with R > lambda fixes all earlier flags.
  int last = -1;
  for (size_t i = 0; i < rep.rows.size(); ++i)
    if (rep.rows[i].R > rep.rows[i].lambda) last = static_cast<int>(i);
  for (int i = 0; i <= last; ++i) rep.rows[i].outlier = true;
  return rep;
}

IndependenceReport independence_test(const Eigen::MatrixXd& residuals, double alpha) {
  const int n = static_cast<int>(residuals.rows());
  const int m = static_cast<int>(residuals.cols());
  if (m < 2) throw DataError("independence_test: at least two columns required");
  if (n <= m) throw DataError("independence_test: requires more rows than columns");
  if (residuals.hasNaN()) throw DataError("independence_test: matrix must be complete (imputed)");

  const Eigen::RowVectorXd mean = residuals.colwise().mean();
  const Eigen::MatrixXd Xc = residuals.rowwise() - mean;
  const Eigen::MatrixXd C = (Xc.transpose() * Xc) / (n - 1);
  Eigen::VectorXd sd = C.diagonal().array().sqrt();
  Eigen::MatrixXd R = C.array() / (sd * sd.transpose()).array();

  Eigen::LLT<Eigen::MatrixXd> llt(R);
  if (llt.info() != Eigen::Success)
    throw NumericError("independence_test: degenerate correlation matrix");
  double logdet = 0.0;
  for (int i = 0; i < m; ++i) logdet += 2.0 * std::log(llt.matrixL()(i, i));

  IndependenceReport rep;
  rep.m = m;
  const double nu = m * (m + 1.0) / 2.0;
  rep.u = -(nu - (2.0 * m + 5.0) / 6.0) * logdet;
  rep.threshold = special::chisq_quantile(1.0 - alpha, m * (m - 1.0) / 2.0);
  rep.independent = rep.u <= rep.threshold;
  return rep;
}

namespace {
std::string fmt_small_p(double p) {
  char buf[32];
  if (p < 0.001) return "<0.001";
  std::snprintf(buf, sizeof(buf), "%.4f", p);
  return buf;
}
}  // namespace

std::string render_univariate(const std::vector<UnivariateRow>& rows) {
  std::ostringstream os;
  char buf[160];
  os << "          Test  Variable Statistic   p value Normality\n";
  int i = 1;
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%2d Shapiro-Wilk %9s %9.4f %9s %9s\n", i++,
                  r.variable.c_str(), r.W, fmt_small_p(r.p_value).c_str(),
                  r.normal ? "YES" : "NO");
    os << buf;
  }
  return os.str();
}

std::string render_mvn(const MvnReport& r) {
  std::ostringstream os;
  char buf[200];
  os << "$multivariateNormality\n";
  os << "             Test Statistic p value Result\n";
  std::snprintf(buf, sizeof(buf), "1 Mardia Skewness %9.4g %7.4f %6s\n", r.multivariate.skew_stat,
                r.multivariate.skew_p, r.multivariate.skew_normal ? "YES" : "NO");
  os << buf;
  std::snprintf(buf, sizeof(buf), "2 Mardia Kurtosis %9.4g %7.4f %6s\n", r.multivariate.kurt_stat,
                r.multivariate.kurt_p, r.multivariate.kurt_normal ? "YES" : "NO");
  os << buf;
  std::snprintf(buf, sizeof(buf), "3             MVN      <NA>    <NA> %6s\n",
                r.multivariate.mvn ? "YES" : "NO");
  os << buf;
  os << "\n$univariateNormality\n" << render_univariate(r.univariate);
  os << "\n$Descriptives\n";
  os << "           n       Mean Std.Dev   Median      Min      Max"
        "     25th     75th     Skew Kurtosis\n";
  for (const auto& d : r.descr) {
    std::snprintf(buf, sizeof(buf),
                  "%-8s %3d %10.4g %7.4f %8.4f %8.4f %8.4f %8.4f %8.4f %8.4f %8.4f\n",
                  d.variable.c_str(), d.n, d.mean, d.std_dev, d.median, d.min, d.max, d.q25,
                  d.q75, d.skew, d.kurtosis);
    os << buf;
  }
  return os.str();
}

std::string render_rosner(const RosnerReport& r) {
  std::ostringstream os;
  char buf[160];
  os << "   i  Mean.i   SD.i   Value Obs.Num  R.i+1 lambda.i+1 Outlier\n";
  int row = 1;
  for (const auto& s : r.rows) {
    std::snprintf(buf, sizeof(buf), "%2d %d %7.4f %6.4f %7.4f %7d %6.4f %10.4f %7s\n", row++,
                  s.i, s.mean_i, s.sd_i, s.value, s.obs_index, s.R, s.lambda,
                  s.outlier ? "TRUE" : "FALSE");
    os << buf;
  }
  return os.str();
}

}  // namespace mesgencov

#include "mesgencov/gaussianize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace mesgencov {

double lambert_w0(double x) {
  const double em1 = std::exp(-1.0);
  if (x < -em1) {
    if (x > -em1 - 1e-12) x = -em1;  // absorb rounding at the branch point
    else throw NumericError("lambert_w0: x < -1/e is outside the principal branch");
  }
  if (x == 0.0) return 0.0;

  double w;
  if (x < -0.25) {
    // Series around the branch point.
    const double p = std::sqrt(2.0 * (M_E * x + 1.0));
    w = -1.0 + p - p * p / 3.0 + 11.0 * p * p * p / 72.0;
  } else if (x < 3.0) {
    w = x < 1.0 ? x * (1.0 - x + 1.5 * x * x) / (1.0 + 0.5 * x) : std::log(1.0 + x);
  } else {
    const double l1 = std::log(x), l2 = std::log(l1);
    w = l1 - l2 + l2 / l1;
  }

  for (int it = 0; it < 60; ++it) {
    const double ew = std::exp(w);
    const double f = w * ew - x;
    if (std::fabs(f) <= 1e-13 * std::max(1.0, std::fabs(x))) break;
    const double wp1 = w + 1.0;
    const double denom = ew * wp1 - (w + 2.0) * f / (2.0 * wp1);
    w -= f / denom;
    if (w < -1.0) w = -1.0;
  }
  return w;
}

namespace {

double excess_kurtosis(const std::vector<double>& v) {
  const double n = static_cast<double>(v.size());
  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double m2 = 0.0, m4 = 0.0;
  for (double a : v) {
    const double e = a - mean;
    m2 += e * e;
    m4 += e * e * e * e;
  }
  m2 /= n;
  m4 /= n;
  return m4 / (m2 * m2) - 3.0;
}

// W_delta: inverse of u -> u*exp(delta*u^2/2) applied elementwise.
std::vector<double> w_delta(const std::vector<double>& z, double delta) {
  std::vector<double> u(z.size());
  if (delta <= 0.0) return z;
  for (size_t i = 0; i < z.size(); ++i) {
    const double a = delta * z[i] * z[i];
    const double w = lambert_w0(a);
    const double mag = std::sqrt(std::max(0.0, w / delta));
    u[i] = std::copysign(mag, z[i]);
  }
  return u;
}

}  // namespace

GaussianizeResult gaussianize_h(const std::vector<double>& column) {
  std::vector<double> v;
  for (double a : column)
    if (!is_missing(a)) v.push_back(a);
  const size_t n = v.size();
  if (n < 10) throw DataError("gaussianize_h: need at least 10 non-missing values");

  const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
  double ss = 0.0;
  for (double a : v) ss += (a - mean) * (a - mean);
  if (ss == 0.0) throw NumericError("gaussianize_h: zero variance");
  const double sd = std::sqrt(ss / (n - 1));

  GaussianizeResult res;
  res.transformed = column;

  const double kurt_raw = excess_kurtosis(v) + 3.0;
  if (kurt_raw <= 3.0) {
    // No heavy tail to remove; delta pinned at 0 and the map is the identity.
    res.params = {mean, sd, 0.0, true, 0};
    return res;
  }

  // Moment-match initializer for the tail parameter.
  double delta = 0.01;
  const double disc = 66.0 * kurt_raw - 162.0;
  if (disc > 0.0) delta = std::max(0.0, (std::sqrt(disc) - 6.0) / 66.0);
  if (delta <= 0.0) delta = 0.01;

  std::vector<double> mv = v;
  std::sort(mv.begin(), mv.end());
  double mu = mv.size() % 2 ? mv[mv.size() / 2]
                            : 0.5 * (mv[mv.size() / 2 - 1] + mv[mv.size() / 2]);
  double sigma = delta < 0.5 ? sd * std::pow(1.0 - 2.0 * delta, 0.75) : sd * 0.25;

  const double tol = 1e-6;
  bool converged = false;
  int outer = 0;
  std::vector<double> u;
  for (; outer < 100; ++outer) {
    std::vector<double> z(n);
    for (size_t i = 0; i < n; ++i) z[i] = (v[i] - mu) / sigma;

    auto kurt_at = [&](double d) { return excess_kurtosis(w_delta(z, d)); };
    double g = kurt_at(delta);
    if (std::fabs(g) <= tol) {
      u = w_delta(z, delta);
      converged = true;
      break;
    }
    // Kurtosis is decreasing in delta; bracket then bisect.
    double lo = 0.0, hi = std::max(delta, 1e-3);
    if (g > 0.0) {
      while (kurt_at(hi) > 0.0 && hi < 64.0) hi *= 2.0;
    } else {
      hi = delta;
      lo = 0.0;
    }
    if (kurt_at(hi) > 0.0) {
      delta = hi;  // cannot reach Gaussian kurtosis; keep the extreme
    } else {
      for (int b = 0; b < 80; ++b) {
        const double mid = 0.5 * (lo + hi);
        if (kurt_at(mid) > 0.0) lo = mid; else hi = mid;
        if (hi - lo < 1e-12) break;
      }
      delta = 0.5 * (lo + hi);
    }

    u = w_delta(z, delta);
    // Re-estimate location/scale from the back-transform.
    std::vector<double> x(n);
    for (size_t i = 0; i < n; ++i) x[i] = mu + sigma * u[i];
    const double mu_new = std::accumulate(x.begin(), x.end(), 0.0) / n;
    double ss2 = 0.0;
    for (double a : x) ss2 += (a - mu_new) * (a - mu_new);
    const double sigma_new = std::sqrt(ss2 / (n - 1));
    const bool stable =
        std::fabs(mu_new - mu) <= 1e-9 * (1.0 + std::fabs(mu)) &&
        std::fabs(sigma_new - sigma) <= 1e-9 * sigma;
    mu = mu_new;
    sigma = sigma_new;
    if (stable && std::fabs(excess_kurtosis(u)) <= tol) {
      converged = true;
      ++outer;
      break;
    }
  }
  if (u.empty()) u = w_delta(v, 0.0);

  res.params = {mu, sigma, delta, converged, outer};
  size_t j = 0;
  for (size_t i = 0; i < column.size(); ++i) {
    if (is_missing(column[i])) continue;
    res.transformed[i] = mu + sigma * u[j++];
  }
  return res;
}

LambertWTransformOutput lambertw_transform(const Eigen::MatrixXd& residuals,
                                           const std::vector<std::string>& names) {
  const int n = static_cast<int>(residuals.rows());
  const int m = static_cast<int>(residuals.cols());
  if (m < 2) throw DataError("lambertw_transform: at least two columns required");

  LambertWTransformOutput out;
  out.new_residuals.resize(n, m);
  for (int c = 0; c < m; ++c) {
    std::vector<double> col(n);
    for (int i = 0; i < n; ++i) col[i] = residuals(i, c);
    auto g = gaussianize_h(col);
    if (!g.params.converged) {
      const std::string nm = c < static_cast<int>(names.size()) ? names[c]
                                                                : "V" + std::to_string(c + 1);
      out.warnings.push_back("gaussianize did not converge for column " + nm +
                             "; using best iterate");
    }
    for (int i = 0; i < n; ++i) out.new_residuals(i, c) = g.transformed[i];
    out.column_params.push_back(g.params);
  }

  // Reports use complete rows only.
  std::vector<int> complete;
  for (int i = 0; i < n; ++i) {
    bool ok = true;
    for (int c = 0; c < m; ++c)
      if (is_missing(out.new_residuals(i, c))) { ok = false; break; }
    if (ok) complete.push_back(i);
  }
  Eigen::MatrixXd Z(complete.size(), m);
  for (size_t i = 0; i < complete.size(); ++i) Z.row(i) = out.new_residuals.row(complete[i]);

  out.mvn = mvn_report(Z, names);
  out.univariate_test = out.mvn.univariate;

  const Eigen::RowVectorXd mean = Z.colwise().mean();
  const Eigen::MatrixXd Zc = Z.rowwise() - mean;
  out.cov = (Zc.transpose() * Zc) / (static_cast<double>(Z.rows()) - 1.0);
  return out;
}

}  // namespace mesgencov

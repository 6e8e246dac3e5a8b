#include "mesgencov/svgplot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <vector>

#include "mesgencov/special.hpp"

namespace mesgencov {

namespace {

constexpr int W = 720, H = 480, PAD = 50;

struct Scale {
  double x0, x1, y0, y1;
  double px(double x) const { return PAD + (x - x0) / (x1 - x0) * (W - 2 * PAD); }
  double py(double y) const { return H - PAD - (y - y0) / (y1 - y0) * (H - 2 * PAD); }
};

void svg_header(std::ofstream& out, const std::string& title) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
      << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << title
      << "</text>\n";
}

void axes(std::ofstream& out) {
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "<line x1=\"%d\" y1=\"%d\" x2=\"%d\" y2=\"%d\" stroke=\"black\"/>\n"
                "<line x1=\"%d\" y1=\"%d\" x2=\"%d\" y2=\"%d\" stroke=\"black\"/>\n",
                PAD, H - PAD, W - PAD, H - PAD, PAD, PAD, PAD, H - PAD);
  out << buf;
}

}  // namespace

void plot_series(const FitResult& fit, const MonthlySeries& series, const std::string& path) {
  const int T = series.T();
  std::vector<double> ys;
  for (int t = 0; t < T; ++t) {
    ys.push_back(fit.fitted[t]);
    if (!is_missing(fit.observed_log[t])) ys.push_back(fit.observed_log[t]);
  }
  Scale s;
  s.x0 = 0;
  s.x1 = std::max(1, T - 1);
  s.y0 = *std::min_element(ys.begin(), ys.end());
  s.y1 = *std::max_element(ys.begin(), ys.end());
  if (s.y1 == s.y0) s.y1 = s.y0 + 1.0;

  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  svg_header(out, "log " + to_string(series.chemical) + " at " + series.site.str());
  axes(out);
  out << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
  char buf[64];
  for (int t = 0; t < T; ++t) {
    std::snprintf(buf, sizeof(buf), "%.1f,%.1f ", s.px(t), s.py(fit.fitted[t]));
    out << buf;
  }
  out << "\"/>\n";
  // One marker per observed month.
  for (int t = 0; t < T; ++t) {
    if (is_missing(fit.observed_log[t])) continue;
    std::snprintf(buf, sizeof(buf),
                  "<circle cx=\"%.1f\" cy=\"%.1f\" r=\"2.5\" fill=\"black\"/>\n", s.px(t),
                  s.py(fit.observed_log[t]));
    out << buf;
  }
  out << "</svg>\n";
}

void plot_multivariate_qq(const ResidualMatrix& R, const std::string& path) {
  const int n = R.T(), m = R.m();
  if (m < 2) throw DataError("plot_multivariate_qq: needs at least 2 columns");
  if (R.values.hasNaN()) throw DataError("plot_multivariate_qq: matrix must be complete");

  const Eigen::RowVectorXd mean = R.values.colwise().mean();
  const Eigen::MatrixXd Xc = R.values.rowwise() - mean;
  const Eigen::MatrixXd S = (Xc.transpose() * Xc) / (n - 1.0);
  Eigen::LLT<Eigen::MatrixXd> llt(S);
  if (llt.info() != Eigen::Success)
    throw NumericError("plot_multivariate_qq: singular covariance");

  std::vector<double> d2(n);
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd x = Xc.row(i).transpose();
    d2[i] = x.dot(llt.solve(x));
  }
  std::sort(d2.begin(), d2.end());
  std::vector<double> q(n);
  for (int i = 0; i < n; ++i)
    q[i] = special::chisq_quantile((i + 0.5) / n, m);

  Scale s{0.0, std::max(q.back(), d2.back()), 0.0, std::max(q.back(), d2.back())};
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  svg_header(out, "Chi-square QQ plot of squared Mahalanobis distances");
  axes(out);
  char buf[128];
  std::snprintf(buf, sizeof(buf),
                "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"gray\" "
                "stroke-dasharray=\"4\"/>\n",
                s.px(s.x0), s.py(s.y0), s.px(s.x1), s.py(s.y1));
  out << buf;
  for (int i = 0; i < n; ++i) {
    std::snprintf(buf, sizeof(buf),
                  "<circle cx=\"%.1f\" cy=\"%.1f\" r=\"2.5\" fill=\"black\"/>\n", s.px(q[i]),
                  s.py(d2[i]));
    out << buf;
  }
  out << "</svg>\n";
}

}  // namespace mesgencov

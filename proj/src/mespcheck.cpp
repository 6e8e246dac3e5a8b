#include "mesgencov/mespcheck.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mesgencov {

Eigen::MatrixXd psd_repair(const Eigen::MatrixXd& C) {
  if (C.rows() != C.cols()) throw DataError("psd_repair: matrix must be square");
  Eigen::MatrixXd S = 0.5 * (C + C.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
  Eigen::VectorXd ev = es.eigenvalues();
  const double scale = std::max(1.0, ev.cwiseAbs().maxCoeff());
  for (int i = 0; i < ev.size(); ++i) {
    if (ev(i) < -1e-10 * scale)
      throw NumericError("psd_repair: eigenvalue " + std::to_string(ev(i)) +
                         " is too negative; covariance is not PSD");
    if (ev(i) < 0.0) ev(i) = 0.0;
  }
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

double logdet_subset(const Eigen::MatrixXd& C, const std::vector<int>& S) {
  if (S.empty()) throw DataError("logdet_subset: empty index set");
  const int n = static_cast<int>(C.rows());
  for (int i : S)
    if (i < 0 || i >= n) throw DataError("logdet_subset: index out of range");
  const int s = static_cast<int>(S.size());
  Eigen::MatrixXd sub(s, s);
  for (int a = 0; a < s; ++a)
    for (int b = 0; b < s; ++b) sub(a, b) = C(S[a], S[b]);
  Eigen::LLT<Eigen::MatrixXd> llt(sub);
  if (llt.info() != Eigen::Success) return -std::numeric_limits<double>::infinity();
  double ld = 0.0;
  for (int i = 0; i < s; ++i) {
    const double d = llt.matrixL()(i, i);
    if (!(d > 0.0)) return -std::numeric_limits<double>::infinity();
    ld += 2.0 * std::log(d);
  }
  return ld;
}

MespSolution greedy_interchange(const MespInstance& inst) {
  const int n = static_cast<int>(inst.C.rows());
  if (inst.s <= 0 || inst.s > n) throw DataError("greedy_interchange: invalid subset size");
  const Eigen::MatrixXd C = psd_repair(inst.C);

  std::vector<int> S;
  std::vector<bool> in(n, false);

  // Greedy forward selection on marginal log-det gain.
  for (int step = 0; step < inst.s; ++step) {
    int best = -1;
    double best_val = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < n; ++j) {
      if (in[j]) continue;
      std::vector<int> trial = S;
      trial.push_back(j);
      const double v = logdet_subset(C, trial);
      if (v > best_val) {
        best_val = v;
        best = j;
      }
    }
    S.push_back(best);
    in[best] = true;
  }

  // 1-swap local search to local optimality.
  double value = logdet_subset(C, S);
  bool improved = true;
  while (improved) {
    improved = false;
    for (size_t a = 0; a < S.size() && !improved; ++a) {
      for (int j = 0; j < n && !improved; ++j) {
        if (in[j]) continue;
        std::vector<int> trial = S;
        trial[a] = j;
        const double v = logdet_subset(C, trial);
        if (v > value + 1e-12 * std::max(1.0, std::fabs(value))) {
          in[S[a]] = false;
          in[j] = true;
          S = trial;
          value = v;
          improved = true;
        }
      }
    }
  }

  std::sort(S.begin(), S.end());
  return {S, logdet_subset(C, S)};
}

}  // namespace mesgencov

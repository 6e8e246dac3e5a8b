#include "mesgencov/covariance.hpp"

#include <cstdio>
#include <fstream>

namespace mesgencov {

std::pair<ResidualMatrix, ResidualMatrix> assemble(const std::vector<SiteResiduals>& per_site) {
  if (per_site.empty()) throw DataError("assemble: no site residuals given");
  const size_t T = per_site.front().raw.size();
  for (const auto& s : per_site) {
    if (s.raw.size() != T || s.imputed.size() != T)
      throw DataError("assemble: length mismatch for site " + s.site.str());
  }
  const int m = static_cast<int>(per_site.size());

  ResidualMatrix imp, na;
  imp.imputed = true;
  na.imputed = false;
  imp.values.resize(T, m);
  na.values.resize(T, m);
  for (int c = 0; c < m; ++c) {
    const auto& s = per_site[c];
    const std::string label = s.site.str() + to_string(s.chemical);
    imp.column_names.push_back(label);
    na.column_names.push_back(label);
    for (size_t t = 0; t < T; ++t) {
      imp.values(t, c) = s.imputed[t];
      na.values(t, c) = s.raw[t];
    }
  }
  return {imp, na};
}

Eigen::MatrixXd sample_covariance(const Eigen::MatrixXd& values) {
  if (values.rows() < 2) throw DataError("sample_covariance: need at least 2 rows");
  if (values.hasNaN()) throw DataError("sample_covariance: matrix must be complete");
  const Eigen::RowVectorXd mean = values.colwise().mean();
  const Eigen::MatrixXd Xc = values.rowwise() - mean;
  return (Xc.transpose() * Xc) / (static_cast<double>(values.rows()) - 1.0);
}

Eigen::MatrixXd sample_covariance(const ResidualMatrix& R) {
  return sample_covariance(R.values);
}

void write_cov_csv(const Eigen::MatrixXd& C, const std::vector<std::string>& labels,
                   const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  for (size_t i = 0; i < labels.size(); ++i) out << (i ? "," : "") << labels[i];
  out << "\n";
  char buf[64];
  for (int i = 0; i < C.rows(); ++i) {
    for (int j = 0; j < C.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", C(i, j));
      out << (j ? "," : "") << buf;
    }
    out << "\n";
  }
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r' && ch != ' ') {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

LabeledMatrix read_labeled_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty matrix file: " + path);
  LabeledMatrix lm;
  lm.labels = split_line(line);
  std::vector<std::vector<double>> rows;
  size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto fields = split_line(line);
    if (fields.size() != lm.labels.size())
      throw ParseError(path + ": row " + std::to_string(lineno) + " has " +
                       std::to_string(fields.size()) + " fields, expected " +
                       std::to_string(lm.labels.size()));
    std::vector<double> row;
    for (const auto& f : fields) {
      if (f.empty() || f == "NA" || f == "NaN" || f == "nan") {
        row.push_back(kMissing);
      } else {
        try {
          row.push_back(std::stod(f));
        } catch (const std::exception&) {
          throw ParseError(path + ": row " + std::to_string(lineno) + ": bad number '" + f + "'");
        }
      }
    }
    rows.push_back(std::move(row));
  }
  lm.values.resize(rows.size(), lm.labels.size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j) lm.values(i, j) = rows[i][j];
  return lm;
}

void write_labeled_csv(const Eigen::MatrixXd& M, const std::vector<std::string>& labels,
                       const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  for (size_t i = 0; i < labels.size(); ++i) out << (i ? "," : "") << labels[i];
  out << "\n";
  char buf[64];
  for (int i = 0; i < M.rows(); ++i) {
    for (int j = 0; j < M.cols(); ++j) {
      if (j) out << ",";
      if (is_missing(M(i, j))) {
        out << "NA";
      } else {
        std::snprintf(buf, sizeof(buf), "%.17g", M(i, j));
        out << buf;
      }
    }
    out << "\n";
  }
}

}  // namespace mesgencov

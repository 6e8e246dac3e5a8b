#include "mesgencov/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "mesgencov/aggregate.hpp"
#include "mesgencov/matio.hpp"
#include "mesgencov/rng.hpp"
#include "mesgencov/svgplot.hpp"

namespace mesgencov {

namespace fs = std::filesystem;
using nlohmann::json;

void GetCovConfig::validate() const {
  if (!(startdate < enddate)) throw DataError("startdate must precede enddate");
  if (r < 0 || r > 5) throw DataError("r must be an integer <= 5 (and >= 0)");
  if (k < 0 || k > 5) throw DataError("k must be an integer <= 5 (and >= 0)");
}

GetCovConfig default_config() {
  GetCovConfig cfg;
  cfg.startdate = parse_datetime("01/01/83 00:00");
  cfg.enddate = parse_datetime("12/31/86 00:00");
  cfg.comp = Chemical::SO4;
  cfg.use36 = true;
  cfg.r = 1;
  cfg.k = 1;
  return cfg;
}

const std::vector<SiteId>& default36_sites() {
  static const std::vector<SiteId> sites = [] {
    const char* codes[] = {"OH71", "NY08", "WV18", "MI53", "NH02", "OH49", "PA42", "ME09",
                           "IN34", "MA13", "NY52", "NY10", "WA14", "NY20", "OH17", "ME00",
                           "TN00", "IL63", "MI99", "WI28", "IN41", "PA29", "WI36", "ME02",
                           "MI09", "MO05", "NC03", "NJ99", "PA15", "CO19", "MN18", "WI37",
                           "AR27", "KS31", "ME98", "MO03"};
    std::vector<SiteId> v;
    for (const char* c : codes) v.emplace_back(c);
    return v;
  }();
  return sites;
}

namespace {

std::vector<SiteId> site_list_field(const json& j, const char* key) {
  std::vector<SiteId> out;
  if (!j.contains(key) || j[key].is_null()) return out;
  for (const auto& s : j[key]) out.emplace_back(s.get<std::string>());
  return out;
}

}  // namespace

GetCovConfig config_from_json_string(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw ParseError(std::string("config: invalid JSON: ") + e.what());
  }
  GetCovConfig cfg = default_config();
  try {
    if (j.contains("startdateStr")) cfg.startdate = parse_datetime(j["startdateStr"]);
    if (j.contains("enddateStr")) cfg.enddate = parse_datetime(j["enddateStr"]);
    if (j.contains("comp")) {
      const std::string c = j["comp"];
      auto chem = chemical_from_string(c);
      if (!chem) throw DataError("config: unknown chemical '" + c + "'");
      cfg.comp = *chem;
    }
    if (j.contains("use36")) cfg.use36 = j["use36"].get<bool>();
    cfg.site_add = site_list_field(j, "siteAdd");
    if (j.contains("outlierDatesbySite") && !j["outlierDatesbySite"].is_null()) {
      for (const auto& pair : j["outlierDatesbySite"]) {
        if (!pair.is_array() || pair.size() != 2)
          throw DataError("config: outlierDatesbySite entries must be [site, month]");
        cfg.outlier_dates_by_site.emplace_back(SiteId(pair[0].get<std::string>()),
                                               pair[1].get<int>());
      }
    }
    cfg.site_outliers = site_list_field(j, "siteOutliers");
    cfg.remove_outliers = site_list_field(j, "removeOutliers");
    if (j.contains("plotMulti")) cfg.plot_multi = j["plotMulti"].get<bool>();
    cfg.site_plot = site_list_field(j, "sitePlot");
    if (j.contains("plotAll")) cfg.plot_all = j["plotAll"].get<bool>();
    if (j.contains("writeMat")) cfg.write_mat = j["writeMat"].get<bool>();
    if (j.contains("r")) cfg.r = j["r"].get<int>();
    if (j.contains("k")) cfg.k = j["k"].get<int>();
    if (j.contains("rngSeed")) cfg.rng_seed = j["rngSeed"].get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

GetCovConfig config_from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open config: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return config_from_json_string(text);
}

LoadedData load_data_dir(const std::string& data_dir) {
  LoadedData d;
  const fs::path dir(data_dir);
  d.weekly = load_weekly((dir / "weekly.csv").string());
  d.daily = load_daily((dir / "daily.csv").string());
  const fs::path sites = dir / "sites.csv";
  if (fs::exists(sites)) d.meta = load_site_meta(sites.string());
  return d;
}

CovOutput get_cov(const GetCovConfig& cfg, const LoadedData& data, const std::string& out_dir) {
  cfg.validate();
  const ModelSpec spec{cfg.r, cfg.k};

  // Site list: built-in 36 (if requested) followed by additions, deduplicated.
  std::vector<SiteId> sites;
  std::set<SiteId> seen;
  auto add = [&](const SiteId& s) {
    if (seen.insert(s).second) sites.push_back(s);
  };
  if (cfg.use36)
    for (const auto& s : default36_sites()) add(s);
  for (const auto& s : cfg.site_add) add(s);
  if (sites.empty()) throw DataError("get_cov: empty site list (use36 false and no siteAdd)");

  const std::set<SiteId> analyze_rosner(cfg.site_outliers.begin(), cfg.site_outliers.end());
  const std::set<SiteId> remove_rosner(cfg.remove_outliers.begin(), cfg.remove_outliers.end());

  CovOutput out;
  if (out_dir != "") fs::create_directories(out_dir);
  std::vector<SiteResiduals> per_site;

  for (const auto& site : sites) {
    MonthlySeries series =
        monthly_concentration(data.weekly, data.daily, site, cfg.comp, cfg.startdate, cfg.enddate);

    // Explicit month removals come first.
    for (const auto& [s, t] : cfg.outlier_dates_by_site) {
      if (s != site) continue;
      if (t < 0 || t >= series.T())
        throw DataError("get_cov: outlier month " + std::to_string(t) + " out of range for " +
                        site.str());
      series.values[t] = kMissing;
    }

    int observed = 0;
    for (double v : series.values)
      if (!is_missing(v)) ++observed;
    if (observed <= spec.n_params())
      throw DataError("get_cov: site " + site.str() + " has only " + std::to_string(observed) +
                      " observed months for " + std::to_string(spec.n_params()) + " parameters");

    FitResult fit = fit_ols(series, spec);

    if (analyze_rosner.count(site) || remove_rosner.count(site)) {
      auto report = rosner(fit.residuals, 3);
      if (remove_rosner.count(site)) {
        bool removed = false;
        for (const auto& row : report.rows) {
          if (!row.outlier) continue;
          series.values[row.obs_index] = kMissing;
          removed = true;
        }
        if (removed) fit = fit_ols(series, spec);  // one refit, no iteration
      }
      out.rosner_tests.emplace(site.str(), std::move(report));
    }

    const std::uint64_t seed =
        derive_seed(cfg.rng_seed, site.str() + "/" + to_string(cfg.comp));
    SiteResiduals sr;
    sr.site = site;
    sr.chemical = cfg.comp;
    sr.raw = fit.residuals;
    sr.imputed = impute_residuals(fit, seed);
    per_site.push_back(std::move(sr));

    const bool plot = cfg.plot_all || std::find(cfg.site_plot.begin(), cfg.site_plot.end(),
                                                site) != cfg.site_plot.end();
    if (plot && out_dir != "") {
      const std::string path = (fs::path(out_dir) / (site.str() + ".svg")).string();
      plot_series(fit, series, path);
      out.plot_files.push_back(path);
    }

    out.pred.push_back(fit.fitted);
    out.summaries.push_back(summarize(fit));
    out.series.push_back(std::move(series));
    out.list_mod.push_back(std::move(fit));
  }

  auto [imputed, raw] = assemble(per_site);
  out.residual_data = std::move(imputed);
  out.residual_data_na = std::move(raw);
  out.sites = sites;
  out.cov = sample_covariance(out.residual_data);
  out.mvn = mvn_report(out.residual_data.values, out.residual_data.column_names);
  out.univariate_test = out.mvn.univariate;

  if (cfg.plot_multi && out_dir != "") {
    const std::string path = (fs::path(out_dir) / "mahalanobis_qq.svg").string();
    plot_multivariate_qq(out.residual_data, path);
    out.plot_files.push_back(path);
  }
  if (cfg.write_mat && out_dir != "")
    write_mat(out.cov, (fs::path(out_dir) / "covSites.mat").string());
  return out;
}

namespace {

json matrix_json(const Eigen::MatrixXd& M) {
  json rows = json::array();
  for (int i = 0; i < M.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < M.cols(); ++j) {
      if (is_missing(M(i, j))) row.push_back(nullptr);
      else row.push_back(M(i, j));
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

std::string report_json(const CovOutput& out, const GetCovConfig& cfg) {
  json j;
  j["schema_version"] = 1;
  j["comp"] = to_string(cfg.comp);
  j["startdate"] = format_datetime(cfg.startdate);
  j["enddate"] = format_datetime(cfg.enddate);
  j["r"] = cfg.r;
  j["k"] = cfg.k;
  j["rngSeed"] = cfg.rng_seed;

  json sites = json::array();
  for (const auto& s : out.sites) sites.push_back(s.str());
  j["sites"] = sites;
  j["labels"] = out.residual_data.column_names;
  j["cov"] = matrix_json(out.cov);
  j["residualData"] = matrix_json(out.residual_data.values);
  j["residualDataNA"] = matrix_json(out.residual_data_na.values);

  json mvn;
  mvn["mardiaSkewness"] = {{"statistic", out.mvn.multivariate.skew_stat},
                           {"pValue", out.mvn.multivariate.skew_p},
                           {"normal", out.mvn.multivariate.skew_normal}};
  mvn["mardiaKurtosis"] = {{"statistic", out.mvn.multivariate.kurt_stat},
                           {"pValue", out.mvn.multivariate.kurt_p},
                           {"normal", out.mvn.multivariate.kurt_normal}};
  mvn["mvn"] = out.mvn.multivariate.mvn;
  j["mvn"] = mvn;

  json uni = json::array();
  for (const auto& r : out.univariate_test)
    uni.push_back({{"test", "Shapiro-Wilk"},
                   {"variable", r.variable},
                   {"statistic", r.W},
                   {"pValue", r.p_value},
                   {"normal", r.normal}});
  j["univariateTest"] = uni;

  json desc = json::array();
  for (const auto& d : out.mvn.descr)
    desc.push_back({{"variable", d.variable}, {"n", d.n},     {"mean", d.mean},
                    {"stdDev", d.std_dev},    {"median", d.median}, {"min", d.min},
                    {"max", d.max},           {"q25", d.q25}, {"q75", d.q75},
                    {"skew", d.skew},         {"kurtosis", d.kurtosis}});
  j["descriptives"] = desc;

  json rosners;
  for (const auto& [site, rep] : out.rosner_tests) {
    json rows = json::array();
    for (const auto& row : rep.rows)
      rows.push_back({{"i", row.i},       {"mean", row.mean_i},   {"sd", row.sd_i},
                      {"value", row.value}, {"obsIndex", row.obs_index}, {"R", row.R},
                      {"lambda", row.lambda}, {"outlier", row.outlier}});
    rosners[site] = rows;
  }
  j["rosnerTest"] = rosners;

  j["pred"] = out.pred;
  j["listMod"] = out.summaries;
  j["plots"] = out.plot_files;
  j["warnings"] = out.warnings;
  return j.dump(2) + "\n";
}

}  // namespace mesgencov

#pragma once

// End-to-end orchestration: from a 14-field configuration to the covariance
// matrix plus the full diagnostics bundle.

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "mesgencov/covariance.hpp"
#include "mesgencov/fit.hpp"
#include "mesgencov/ingest.hpp"
#include "mesgencov/stattests.hpp"

namespace mesgencov {

struct GetCovConfig {
  DateTime startdate;
  DateTime enddate;
  Chemical comp = Chemical::SO4;
  bool use36 = true;
  std::vector<SiteId> site_add;
  std::vector<std::pair<SiteId, int>> outlier_dates_by_site;  // (site, month index)
  std::vector<SiteId> site_outliers;    // run the Rosner analysis
  std::vector<SiteId> remove_outliers;  // drop Rosner-flagged months + refit
  bool plot_multi = false;
  std::vector<SiteId> site_plot;
  bool plot_all = false;
  bool write_mat = false;
  int r = 1;
  int k = 1;
  std::uint64_t rng_seed = 0;

  void validate() const;
};

// startdate 01/01/83, enddate 12/31/86, SO4, use36, r = k = 1, flags off.
GetCovConfig default_config();

// Field names mirror the R input frame (startdateStr, enddateStr, comp, ...).
GetCovConfig config_from_json_file(const std::string& path);
GetCovConfig config_from_json_string(const std::string& text);

// The built-in 36-site default list.
const std::vector<SiteId>& default36_sites();

struct LoadedData {
  std::vector<WeeklyConcRecord> weekly;
  std::vector<DailyPrecipRecord> daily;
  std::map<SiteId, SiteMeta> meta;  // optional for get_cov
};

LoadedData load_data_dir(const std::string& data_dir);

struct CovOutput {
  Eigen::MatrixXd cov;
  std::vector<FitResult> list_mod;
  std::vector<std::string> summaries;
  std::vector<SiteId> sites;
  MvnReport mvn;
  std::vector<UnivariateRow> univariate_test;
  ResidualMatrix residual_data;     // imputed
  ResidualMatrix residual_data_na;  // raw, with missing
  std::map<std::string, RosnerReport> rosner_tests;  // by site code
  std::vector<std::vector<double>> pred;             // fitted values per site
  std::vector<MonthlySeries> series;                 // aggregated inputs per site
  std::vector<std::string> plot_files;
  std::vector<std::string> warnings;
};

// out_dir receives plots and covSites.mat when the corresponding flags are
// set; pass "" to suppress all file output.
CovOutput get_cov(const GetCovConfig& cfg, const LoadedData& data,
                  const std::string& out_dir = "");

// report.json serialization of the full output bundle.
std::string report_json(const CovOutput& out, const GetCovConfig& cfg);

}  // namespace mesgencov

#include <filesystem>

#include "doctest.h"
#include "helpers.hpp"
#include "mesgencov/pipeline.hpp"
#include "mesgencov/synth.hpp"

using namespace mesgencov;
using testutil::TempDir;

namespace {

// Three-site fixture whose window matches the default config.
LoadedData fixture(double missing_rate, std::vector<std::string>* sites_out = nullptr,
                   std::uint64_t seed = 11) {
  SynthSpec spec;
  spec.seed = seed;
  spec.n_sites = 3;
  spec.months = 48;
  spec.missing_rate = missing_rate;
  auto data = generate_synthetic(spec);
  LoadedData d;
  d.weekly = data.weekly;
  d.daily = data.daily;
  for (const auto& m : data.meta) d.meta[m.site] = m;
  if (sites_out)
    for (const auto& t : data.truth) sites_out->push_back(t.site.str());
  return d;
}

GetCovConfig fixture_config(const std::vector<std::string>& sites) {
  GetCovConfig cfg = default_config();
  cfg.use36 = false;
  for (const auto& s : sites) cfg.site_add.emplace_back(s);
  cfg.enddate = parse_datetime("12/31/86 23:59");
  return cfg;
}

}  // namespace

TEST_CASE("default config matches the documented defaults") {
  auto cfg = default_config();
  CHECK(cfg.r == 1);
  CHECK(cfg.k == 1);
  CHECK(cfg.comp == Chemical::SO4);
  CHECK(cfg.use36);
  CHECK_FALSE(cfg.write_mat);
  CHECK_FALSE(cfg.plot_multi);
  CHECK(cfg.startdate.year == 1983);
  CHECK(cfg.enddate.year == 1986);
}

TEST_CASE("built-in 36-site list") {
  const auto& sites = default36_sites();
  REQUIRE(sites.size() == 36);
  CHECK(sites.front().str() == "OH71");
  CHECK(sites.back().str() == "MO03");
  CHECK(std::count_if(sites.begin(), sites.end(),
                      [](const SiteId& s) { return s.str() == "NY52"; }) == 1);
}

TEST_CASE("config json parsing") {
  auto cfg = config_from_json_string(R"({
    "startdateStr": "01/01/83 00:00",
    "enddateStr": "12/31/84 00:00",
    "comp": "NO3",
    "use36": false,
    "siteAdd": ["NY52", "TN00"],
    "outlierDatesbySite": [["NY52", 5]],
    "siteOutliers": ["NY52"],
    "removeOutliers": [],
    "plotMulti": true,
    "sitePlot": ["TN00"],
    "plotAll": false,
    "writeMat": true,
    "r": 2,
    "k": 3,
    "rngSeed": 17
  })");
  CHECK(cfg.comp == Chemical::NO3);
  CHECK_FALSE(cfg.use36);
  REQUIRE(cfg.site_add.size() == 2);
  CHECK(cfg.site_add[0].str() == "NY52");
  REQUIRE(cfg.outlier_dates_by_site.size() == 1);
  CHECK(cfg.outlier_dates_by_site[0].second == 5);
  CHECK(cfg.plot_multi);
  CHECK(cfg.write_mat);
  CHECK(cfg.r == 2);
  CHECK(cfg.k == 3);
  CHECK(cfg.rng_seed == 17);

  CHECK_THROWS_AS(config_from_json_string("{ not json"), ParseError);
  CHECK_THROWS_AS(config_from_json_string(R"({"r": 7})"), DataError);
  CHECK_THROWS_AS(config_from_json_string(
                      R"({"startdateStr": "01/01/90 00:00", "enddateStr": "01/01/85 00:00"})"),
                  DataError);
  CHECK_THROWS_AS(config_from_json_string(R"({"comp": "XY"})"), DataError);
}

TEST_CASE("get_cov on a complete fixture: residualData equals residualDataNA") {
  std::vector<std::string> sites;
  auto data = fixture(0.0, &sites);
  auto cfg = fixture_config(sites);
  auto out = get_cov(cfg, data);

  CHECK(out.residual_data.m() == 3);
  CHECK(out.residual_data.T() == 48);
  for (int t = 0; t < out.residual_data.T(); ++t)
    for (int c = 0; c < 3; ++c)
      CHECK(out.residual_data.values(t, c) == out.residual_data_na.values(t, c));

  // cov symmetric, matching dimensions, labels carry site + chemical.
  CHECK(out.cov.rows() == 3);
  CHECK((out.cov - out.cov.transpose()).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(out.residual_data.column_names[0] == sites[0] + "SO4");
  CHECK(out.summaries.size() == 3);
  CHECK(out.pred.size() == 3);
}

TEST_CASE("missing months are imputed only in the imputed variant") {
  std::vector<std::string> sites;
  auto data = fixture(0.15, &sites);
  auto out = get_cov(fixture_config(sites), data);
  int n_missing = 0;
  for (int t = 0; t < out.residual_data_na.T(); ++t)
    for (int c = 0; c < out.residual_data_na.m(); ++c) {
      if (is_missing(out.residual_data_na.values(t, c))) {
        ++n_missing;
        CHECK(!is_missing(out.residual_data.values(t, c)));
      } else {
        CHECK(out.residual_data_na.values(t, c) == out.residual_data.values(t, c));
      }
    }
  CHECK(n_missing > 0);
}

TEST_CASE("explicit outlier month removal") {
  std::vector<std::string> sites;
  auto data = fixture(0.0, &sites);
  auto cfg = fixture_config(sites);
  cfg.outlier_dates_by_site.emplace_back(SiteId(sites[0]), 25);
  auto out = get_cov(cfg, data);
  CHECK(is_missing(out.residual_data_na.values(25, 0)));
  CHECK(!is_missing(out.residual_data_na.values(25, 1)));

  cfg.outlier_dates_by_site[0].second = 480;  // out of range
  CHECK_THROWS_AS(get_cov(cfg, data), DataError);
}

TEST_CASE("siteOutliers runs the Rosner analysis; removeOutliers drops months") {
  std::vector<std::string> sites;
  auto data = fixture(0.0, &sites);

  // Plant a gross outlier into one month of the first site's weekly data.
  for (auto& w : data.weekly) {
    if (w.site.str() == sites[0] && w.yrmonth == 198407) w.conc[Chemical::SO4] *= 150.0;
  }

  auto cfg = fixture_config(sites);
  cfg.site_outliers.emplace_back(sites[0]);
  auto analyzed = get_cov(cfg, data);
  REQUIRE(analyzed.rosner_tests.count(sites[0]) == 1);
  const auto& rep = analyzed.rosner_tests.at(sites[0]);
  REQUIRE(!rep.rows.empty());
  CHECK(rep.rows[0].outlier);
  // Analysis only: the month stays in the data.
  CHECK(!is_missing(analyzed.residual_data_na.values(rep.rows[0].obs_index, 0)));

  cfg.site_outliers.clear();
  cfg.remove_outliers.emplace_back(sites[0]);
  auto removed = get_cov(cfg, data);
  CHECK(is_missing(removed.residual_data_na.values(rep.rows[0].obs_index, 0)));
}

TEST_CASE("plot emission per flags") {
  std::vector<std::string> sites;
  auto data = fixture(0.0, &sites);
  auto cfg = fixture_config(sites);

  TempDir td("plots");
  cfg.plot_all = true;
  cfg.plot_multi = true;
  auto out = get_cov(cfg, data, td.str());
  CHECK(out.plot_files.size() == 4);  // 3 site plots + QQ
  for (const auto& f : out.plot_files) CHECK(std::filesystem::exists(f));

  // One circle marker per observed month.
  const std::string svg = testutil::read_file(td.path(sites[0] + ".svg"));
  size_t circles = 0, pos = 0;
  while ((pos = svg.find("<circle", pos)) != std::string::npos) {
    ++circles;
    pos += 7;
  }
  CHECK(circles == 48);

  TempDir td2("plots2");
  cfg.plot_all = false;
  cfg.plot_multi = false;
  cfg.site_plot = {SiteId(sites[1])};
  auto out2 = get_cov(cfg, data, td2.str());
  REQUIRE(out2.plot_files.size() == 1);
  CHECK(out2.plot_files[0].find(sites[1]) != std::string::npos);
}

TEST_CASE("get_cov error cases") {
  std::vector<std::string> sites;
  auto data = fixture(0.0, &sites);
  auto cfg = fixture_config(sites);
  cfg.site_add.clear();
  CHECK_THROWS_AS(get_cov(cfg, data), DataError);  // empty site list

  cfg = fixture_config(sites);
  cfg.site_add.emplace_back("ZZ99");  // no data for this site
  try {
    get_cov(cfg, data);
    FAIL("expected error");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("ZZ99") != std::string::npos);
  }
}

TEST_CASE("end-to-end determinism of the serialized output") {
  std::vector<std::string> sites;
  auto data = fixture(0.2, &sites);
  auto cfg = fixture_config(sites);
  cfg.rng_seed = 31337;
  auto a = get_cov(cfg, data);
  auto b = get_cov(cfg, data);
  CHECK(report_json(a, cfg) == report_json(b, cfg));

  // A different seed changes the imputed draws.
  cfg.rng_seed = 31338;
  auto c = get_cov(cfg, data);
  CHECK(report_json(a, cfg) != report_json(c, cfg));
}

TEST_CASE("per-site results are independent of the other sites present") {
  std::vector<std::string> sites;
  auto data = fixture(0.1, &sites);
  auto full_cfg = fixture_config(sites);
  auto full = get_cov(full_cfg, data);

  auto solo_cfg = fixture_config({sites[1]});
  auto solo = get_cov(solo_cfg, data);
  for (int t = 0; t < solo.residual_data.T(); ++t)
    CHECK(solo.residual_data.values(t, 0) == full.residual_data.values(t, 1));
}

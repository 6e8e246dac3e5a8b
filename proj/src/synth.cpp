#include "mesgencov/synth.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <nlohmann/json.hpp>

#include "mesgencov/rng.hpp"

namespace mesgencov {

namespace {

SiteId synth_site_id(int i) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "S%c%02d", 'A' + i / 100, i % 100);
  return SiteId(buf);
}

DateTime dt_from_days(std::int64_t days, int hour = 0, int minute = 0) {
  DateTime dt;
  DateTime::civil_from_days(days, dt.year, dt.month, dt.day);
  dt.hour = hour;
  dt.minute = minute;
  return dt;
}

}  // namespace

SynthData generate_synthetic(const SynthSpec& spec) {
  if (spec.missing_rate < 0.0 || spec.missing_rate > 1.0)
    throw DataError("generate_synthetic: missing rate must be in [0,1]");
  spec.model.validate();

  SynthData out;
  out.window_start = DateTime{spec.start_year, 1, 1, 0, 0};
  const int T = spec.months;
  int ey = spec.start_year + (T - 1) / 12, em = 1 + (T - 1) % 12;
  out.window_end = DateTime{ey, em, 28, 23, 0};

  const Eigen::MatrixXd X = design_matrix(T, spec.model);

  for (int si = 0; si < spec.n_sites; ++si) {
    const SiteId site = synth_site_id(si);
    Rng rng(derive_seed(spec.seed, "synth/" + site.str()));

    SynthTruth truth;
    truth.site = site;
    truth.sigma = spec.noise_sigma;
    truth.latitude = 25.0 + 24.0 * rng.uniform();
    truth.longitude = -124.0 + 57.0 * rng.uniform();
    out.meta.push_back({site, truth.latitude, truth.longitude});

    Eigen::VectorXd beta(spec.model.n_params());
    int c = 0;
    beta(c++) = 0.5 + rng.uniform();  // intercept
    double scale = 1.0;
    for (int i = 1; i <= spec.model.r; ++i) {
      scale *= std::max(1.0, static_cast<double>(T));
      beta(c++) = (rng.uniform() - 0.5) / scale;  // keeps t^i terms bounded
    }
    for (int j = 1; j <= spec.model.k; ++j) {
      beta(c++) = rng.uniform() - 0.5;
      beta(c++) = rng.uniform() - 0.5;
    }
    truth.coeffs.assign(beta.data(), beta.data() + beta.size());
    out.truth.push_back(truth);

    const Eigen::VectorXd trend = X * beta;
    for (int t = 0; t < T; ++t) {
      double u = rng.normal();
      if (spec.heavy_tail_delta > 0.0)
        u *= std::exp(spec.heavy_tail_delta * u * u / 2.0);
      const double y = std::exp(trend(t) + spec.noise_sigma * u);
      const bool month_missing = rng.uniform() < spec.missing_rate;

      const int ym = yrmonth_at_offset(out.window_start.yrmonth(), t);
      const int yy = ym / 100, mm = ym % 100;
      const std::int64_t day0 = DateTime::days_from_civil(yy, mm, 1);
      // Four 7-day weeks per month; all carry the month's concentration.
      for (int w = 0; w < 4; ++w) {
        WeeklyConcRecord rec;
        rec.site = site;
        rec.date_on = dt_from_days(day0 + 7 * w);
        rec.date_off = dt_from_days(day0 + 7 * (w + 1));
        rec.yrmonth = ym;
        rec.conc[spec.chemical] = month_missing ? kMissing : y;
        out.weekly.push_back(rec);
        for (int d = 0; d < 7; ++d) {
          DailyPrecipRecord dr;
          dr.site = site;
          const std::int64_t dd = day0 + 7 * w + d;
          DateTime::civil_from_days(dd, dr.day.year, dr.day.month, dr.day.day);
          dr.precip = std::exp(0.5 * rng.normal());
          out.daily.push_back(dr);
        }
      }
    }
  }
  return out;
}

void write_synthetic(const SynthData& data, const std::string& out_dir) {
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  write_weekly(data.weekly, (fs::path(out_dir) / "weekly.csv").string());
  write_daily(data.daily, (fs::path(out_dir) / "daily.csv").string());

  std::ofstream sites((fs::path(out_dir) / "sites.csv").string());
  if (!sites) throw DataError("cannot write sites.csv");
  sites << "site,latitude,longitude\n";
  char buf[96];
  for (const auto& m : data.meta) {
    std::snprintf(buf, sizeof(buf), "%s,%.6f,%.6f\n", m.site.str().c_str(), m.latitude,
                  m.longitude);
    sites << buf;
  }

  nlohmann::json truth = nlohmann::json::array();
  for (const auto& t : data.truth) {
    truth.push_back({{"site", t.site.str()},
                     {"coeffs", t.coeffs},
                     {"sigma", t.sigma},
                     {"latitude", t.latitude},
                     {"longitude", t.longitude}});
  }
  nlohmann::json j = {{"window_start", format_datetime(data.window_start)},
                      {"window_end", format_datetime(data.window_end)},
                      {"sites", truth}};
  std::ofstream out((fs::path(out_dir) / "truth.json").string());
  out << j.dump(2) << "\n";
}

}  // namespace mesgencov

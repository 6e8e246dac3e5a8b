#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "mesgencov/aggregate.hpp"
#include "mesgencov/fit.hpp"
#include "mesgencov/synth.hpp"

using namespace mesgencov;
using testutil::TempDir;

TEST_CASE("synthetic fixtures are deterministic") {
  TempDir td("synth");
  SynthSpec spec;
  spec.seed = 99;
  spec.n_sites = 2;
  spec.months = 24;
  spec.missing_rate = 0.1;
  write_synthetic(generate_synthetic(spec), td.path("a"));
  write_synthetic(generate_synthetic(spec), td.path("b"));
  for (const char* f : {"weekly.csv", "daily.csv", "sites.csv", "truth.json"}) {
    CHECK(testutil::read_file(td.path("a") + "/" + f) ==
          testutil::read_file(td.path("b") + "/" + f));
  }
}

TEST_CASE("zero missing rate yields complete monthly series") {
  SynthSpec spec;
  spec.seed = 4;
  spec.n_sites = 2;
  spec.months = 36;
  spec.missing_rate = 0.0;
  auto data = generate_synthetic(spec);
  for (const auto& t : data.truth) {
    auto series = monthly_concentration(data.weekly, data.daily, t.site, spec.chemical,
                                        data.window_start, data.window_end);
    REQUIRE(series.T() == 36);
    for (double v : series.values) CHECK(!is_missing(v));
  }
}

TEST_CASE("fit on a synthetic fixture recovers the generating coefficients") {
  SynthSpec spec;
  spec.seed = 123;
  spec.n_sites = 3;
  spec.months = 72;
  spec.noise_sigma = 0.1;
  auto data = generate_synthetic(spec);
  for (const auto& truth : data.truth) {
    auto series = monthly_concentration(data.weekly, data.daily, truth.site, spec.chemical,
                                        data.window_start, data.window_end);
    auto fit = fit_ols(series, spec.model);
    REQUIRE(static_cast<size_t>(fit.coeffs.size()) == truth.coeffs.size());
    for (size_t j = 0; j < truth.coeffs.size(); ++j) {
      const double se = fit.coeff_table[j].std_error;
      CHECK(std::abs(fit.coeffs(j) - truth.coeffs[j]) < 4.0 * se);
    }
  }
}

TEST_CASE("fixtures load back through the ingest layer") {
  TempDir td("synthload");
  SynthSpec spec;
  spec.seed = 6;
  spec.n_sites = 2;
  spec.months = 12;
  spec.missing_rate = 0.2;
  auto data = generate_synthetic(spec);
  write_synthetic(data, td.str());
  auto weekly = load_weekly(td.path("weekly.csv"));
  auto daily = load_daily(td.path("daily.csv"));
  auto meta = load_site_meta(td.path("sites.csv"));
  CHECK(weekly.size() == data.weekly.size());
  CHECK(daily.size() == data.daily.size());
  CHECK(meta.size() == 2);
}

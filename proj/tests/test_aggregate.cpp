#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "mesgencov/aggregate.hpp"

using namespace mesgencov;
using testutil::daily;
using testutil::dt;
using testutil::week;

namespace {

const Chemical kChem = Chemical::SO4;

MonthlySeries run(const std::vector<WeeklyConcRecord>& w, const std::vector<DailyPrecipRecord>& d,
                  int y0 = 1983, int m0 = 1, int y1 = 1983, int m1 = 1) {
  return monthly_concentration(w, d, SiteId("NY52"), kChem, dt(y0, m0, 1), dt(y1, m1, 28));
}

}  // namespace

TEST_CASE("single week identity") {
  // c=2 mg/L over daily precip {1,1,2} L -> (4*2)/4 = 2.0.
  std::vector<WeeklyConcRecord> w = {
      week("NY52", dt(1983, 1, 3), dt(1983, 1, 6), 198301, kChem, 2.0)};
  std::vector<DailyPrecipRecord> d = {daily("NY52", 1983, 1, 3, 1.0),
                                      daily("NY52", 1983, 1, 4, 1.0),
                                      daily("NY52", 1983, 1, 5, 2.0)};
  auto s = run(w, d);
  REQUIRE(s.T() == 1);
  CHECK(s.values[0] == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("missing-concentration week excluded from numerator and denominator") {
  // (c=2, p_w=4) and (c=missing, p_w=10) -> 8/4 = 2.0, not 8/14.
  std::vector<WeeklyConcRecord> w = {
      week("NY52", dt(1983, 1, 3), dt(1983, 1, 7), 198301, kChem, 2.0),
      week("NY52", dt(1983, 1, 10), dt(1983, 1, 15), 198301, kChem, kMissing)};
  std::vector<DailyPrecipRecord> d = {
      daily("NY52", 1983, 1, 3, 2.0), daily("NY52", 1983, 1, 5, 2.0),
      daily("NY52", 1983, 1, 10, 5.0), daily("NY52", 1983, 1, 12, 5.0)};
  auto s = run(w, d);
  CHECK(s.values[0] == doctest::Approx(2.0).epsilon(1e-14));

  // Dropping the missing week's precipitation rows changes nothing.
  std::vector<DailyPrecipRecord> d2 = {daily("NY52", 1983, 1, 3, 2.0),
                                       daily("NY52", 1983, 1, 5, 2.0)};
  CHECK(run(w, d2).values[0] == doctest::Approx(s.values[0]).epsilon(1e-14));
}

TEST_CASE("two valid weeks weighted by precipitation") {
  // (c=1, p_w=2), (c=4, p_w=1) -> (2+4)/3 = 2.0.
  std::vector<WeeklyConcRecord> w = {
      week("NY52", dt(1983, 1, 3), dt(1983, 1, 6), 198301, kChem, 1.0),
      week("NY52", dt(1983, 1, 10), dt(1983, 1, 13), 198301, kChem, 4.0)};
  std::vector<DailyPrecipRecord> d = {daily("NY52", 1983, 1, 4, 2.0),
                                      daily("NY52", 1983, 1, 11, 1.0)};
  auto s = run(w, d);
  CHECK(s.values[0] == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("straddling week follows its yrmonth field") {
  std::vector<WeeklyConcRecord> w = {
      week("NY52", dt(1983, 1, 28), dt(1983, 2, 4), 198302, kChem, 3.0)};
  std::vector<DailyPrecipRecord> d = {daily("NY52", 1983, 1, 30, 1.0)};
  auto s = run(w, d, 1983, 1, 1983, 2);
  REQUIRE(s.T() == 2);
  CHECK(is_missing(s.values[0]));  // January has no weeks
  CHECK(s.values[1] == doctest::Approx(3.0));

  auto buckets = assign_weeks_to_months(w);
  REQUIRE(buckets.count(198302) == 1);
  CHECK(buckets.count(198301) == 0);
}

TEST_CASE("zero total precipitation yields missing") {
  std::vector<WeeklyConcRecord> w = {
      week("NY52", dt(1983, 1, 3), dt(1983, 1, 6), 198301, kChem, 2.0)};
  std::vector<DailyPrecipRecord> d = {daily("NY52", 1983, 1, 4, 0.0)};
  CHECK(is_missing(run(w, d).values[0]));
  CHECK(is_missing(run(w, {}).values[0]));
}

TEST_CASE("back-to-back weeks do not double count the boundary day") {
  // Day 8's precipitation belongs to the second week only ([on, off) rule).
  std::vector<WeeklyConcRecord> w = {
      week("NY52", dt(1983, 1, 1), dt(1983, 1, 8), 198301, kChem, 1.0),
      week("NY52", dt(1983, 1, 8), dt(1983, 1, 15), 198301, kChem, 3.0)};
  std::vector<DailyPrecipRecord> d = {daily("NY52", 1983, 1, 2, 1.0),
                                      daily("NY52", 1983, 1, 8, 1.0)};
  // Week1 mass = 1*1, week2 mass = 3*1 -> (1+3)/2 = 2.
  CHECK(run(w, d).values[0] == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("scale equivariance and convexity over random fixtures") {
  std::mt19937_64 gen(1234);
  std::uniform_real_distribution<double> conc(0.1, 5.0), precip(0.1, 10.0);
  std::uniform_int_distribution<int> nweeks(1, 4);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<WeeklyConcRecord> w;
    std::vector<DailyPrecipRecord> d, d_scaled;
    const int n = nweeks(gen);
    double cmin = 1e300, cmax = -1e300;
    for (int i = 0; i < n; ++i) {
      const int day0 = 1 + i * 7;
      const double c = conc(gen);
      cmin = std::min(cmin, c);
      cmax = std::max(cmax, c);
      w.push_back(week("NY52", dt(1983, 1, day0), dt(1983, 1, day0 + 6), 198301, kChem, c));
      for (int j = 0; j < 3; ++j) {
        const double p = precip(gen);
        d.push_back(daily("NY52", 1983, 1, day0 + j, p));
        d_scaled.push_back(daily("NY52", 1983, 1, day0 + j, 7.5 * p));
      }
    }
    const double y = run(w, d).values[0];
    const double y_scaled = run(w, d_scaled).values[0];
    CHECK(y == doctest::Approx(y_scaled).epsilon(1e-12));
    CHECK(y >= cmin - 1e-12);
    CHECK(y <= cmax + 1e-12);
  }
}

TEST_CASE("missing daily precipitation counts as zero litres") {
  std::vector<WeeklyConcRecord> w = {
      week("NY52", dt(1983, 1, 3), dt(1983, 1, 6), 198301, kChem, 2.0)};
  std::vector<DailyPrecipRecord> d = {daily("NY52", 1983, 1, 3, kMissing),
                                      daily("NY52", 1983, 1, 4, 3.0)};
  CHECK(run(w, d).values[0] == doctest::Approx(2.0));
}

TEST_CASE("window defines T and month alignment") {
  std::vector<WeeklyConcRecord> w = {
      week("NY52", dt(1983, 3, 7), dt(1983, 3, 10), 198303, kChem, 1.5)};
  std::vector<DailyPrecipRecord> d = {daily("NY52", 1983, 3, 8, 1.0)};
  auto s = monthly_concentration(w, d, SiteId("NY52"), kChem, dt(1983, 1, 1), dt(1983, 6, 30));
  REQUIRE(s.T() == 6);
  CHECK(s.start_yrmonth == 198301);
  CHECK(is_missing(s.values[0]));
  CHECK(s.values[2] == doctest::Approx(1.5));
  CHECK(is_missing(s.values[5]));
}

#include "mesgencov/aggregate.hpp"

#include <algorithm>

namespace mesgencov {

std::map<int, std::vector<WeeklyConcRecord>> assign_weeks_to_months(
    const std::vector<WeeklyConcRecord>& weekly) {
  std::map<int, std::vector<WeeklyConcRecord>> out;
  for (const auto& w : weekly) out[w.yrmonth].push_back(w);
  return out;
}

MonthlySeries monthly_concentration(const std::vector<WeeklyConcRecord>& weekly,
                                    const std::vector<DailyPrecipRecord>& daily,
                                    const SiteId& site, Chemical chem,
                                    const DateTime& window_start, const DateTime& window_end) {
  if (!(window_start <= window_end)) throw DataError("window start must not be after end");
  const int start_ym = window_start.yrmonth();
  const int T = months_inclusive(window_start, window_end);

  // Per-site daily precipitation keyed by day index; missing counts as 0 L.
  std::map<std::int64_t, double> precip;
  for (const auto& d : daily) {
    if (d.site != site) continue;
    precip[d.day.days()] = is_missing(d.precip) ? 0.0 : d.precip;
  }
  auto week_precip = [&](const WeeklyConcRecord& w) {
    // D(w): calendar days whose midnight falls in [date_on, date_off), so
    // back-to-back weeks sharing a boundary timestamp partition the days.
    const std::int64_t d0 = (w.date_on.minutes_since_epoch() + 1439) / 1440;
    const std::int64_t d1 = (w.date_off.minutes_since_epoch() + 1439) / 1440;  // exclusive
    double p = 0.0;
    for (auto it = precip.lower_bound(d0); it != precip.end() && it->first < d1; ++it)
      p += it->second;
    return p;
  };

  MonthlySeries s;
  s.site = site;
  s.chemical = chem;
  s.start_yrmonth = start_ym;
  std::vector<double> mass(T, 0.0), volume(T, 0.0);
  std::vector<bool> any_valid(T, false);

  for (const auto& w : weekly) {
    if (w.site != site) continue;
    const int t = yrmonth_offset(start_ym, w.yrmonth);
    if (t < 0 || t >= T) continue;
    auto it = w.conc.find(chem);
    const double c = it == w.conc.end() ? kMissing : it->second;
    if (is_missing(c)) continue;  // missing weeks contribute neither mass nor volume
    const double pw = week_precip(w);
    mass[t] += pw * c;
    volume[t] += pw;
    any_valid[t] = true;
  }

  s.values.assign(T, kMissing);
  for (int t = 0; t < T; ++t) {
    if (any_valid[t] && volume[t] > 0.0) s.values[t] = mass[t] / volume[t];
  }
  return s;
}

}  // namespace mesgencov

#pragma once

// Precipitation-weighted monthly concentrations. A month's value is total
// chemical mass over total precipitation volume, where weeks with a missing
// concentration contribute neither mass nor volume.

#include <map>
#include <vector>

#include "mesgencov/ingest.hpp"
#include "mesgencov/types.hpp"

namespace mesgencov {

struct MonthlySeries {
  SiteId site;
  Chemical chemical = Chemical::SO4;
  int start_yrmonth = 0;
  std::vector<double> values;  // length T; kMissing where undefined

  int T() const { return static_cast<int>(values.size()); }
};

// Buckets weekly records by their yrmonth field (weeks are atomic; a week
// straddling a month boundary belongs wholly to its recorded yrmonth).
std::map<int, std::vector<WeeklyConcRecord>> assign_weeks_to_months(
    const std::vector<WeeklyConcRecord>& weekly);

MonthlySeries monthly_concentration(const std::vector<WeeklyConcRecord>& weekly,
                                    const std::vector<DailyPrecipRecord>& daily,
                                    const SiteId& site, Chemical chem,
                                    const DateTime& window_start, const DateTime& window_end);

}  // namespace mesgencov

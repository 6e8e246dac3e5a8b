#pragma once

// Site list construction: most-data sites with an optional region filter, and
// geographically sparse lists via farthest-point greedy selection.

#include <map>
#include <string>
#include <vector>

#include "mesgencov/ingest.hpp"
#include "mesgencov/types.hpp"

namespace mesgencov {

enum class Region { All, N, S, W };

Region region_from_string(const std::string& s);  // "" -> All

// state code -> region table; defaults below, overridable from CSV
// (columns state,region).
class RegionTable {
public:
  static RegionTable defaults();
  static RegionTable from_csv(const std::string& path);

  Region region_of(const SiteId& site) const;

private:
  std::map<std::string, Region> by_state_;
};

struct SiteQuery {
  DateTime start;
  DateTime end;
  int count = 36;
  int min_weeks = 104;
  Chemical chemical = Chemical::SO4;
  Region region = Region::All;  // get_sites only
  int start_rank = 1;           // max_dist_sites only
};

struct SiteListResult {
  std::vector<SiteId> final_list;
  std::map<SiteId, int> counts;
  std::vector<std::string> warnings;
  // Echo fields for piping into a pipeline config.
  std::string start_date;
  std::string end_date;
  std::string comp;
};

// Non-missing weekly observations of `chem` per site with date_on in
// [start, end].
std::map<SiteId, int> count_weekly_obs(const std::vector<WeeklyConcRecord>& weekly,
                                       Chemical chem, const DateTime& start,
                                       const DateTime& end);

SiteListResult get_sites(const SiteQuery& q, const std::vector<WeeklyConcRecord>& weekly,
                         const RegionTable& regions = RegionTable::defaults());

SiteListResult max_dist_sites(const SiteQuery& q, const std::vector<WeeklyConcRecord>& weekly,
                              const std::map<SiteId, SiteMeta>& meta);

// Great-circle distance in km, Earth radius 6371.0 km.
double haversine(const SiteMeta& a, const SiteMeta& b);

}  // namespace mesgencov

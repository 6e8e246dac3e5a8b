#include "mesgencov/siteselect.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace mesgencov {

Region region_from_string(const std::string& s) {
  if (s.empty() || s == "All") return Region::All;
  if (s == "N") return Region::N;
  if (s == "S") return Region::S;
  if (s == "W") return Region::W;
  throw DataError("unknown region '" + s + "' (expected \"\", \"N\", \"S\" or \"W\")");
}

RegionTable RegionTable::defaults() {
  RegionTable t;
  static const char* north[] = {"ME", "NH", "VT", "MA", "RI", "CT", "NY", "NJ", "PA", "OH",
                                "IN", "IL", "MI", "WI", "MN", "IA", "NE", "SD", "ND"};
  static const char* south[] = {"MD", "DE", "VA", "WV", "KY", "TN", "NC", "SC", "GA",
                                "FL", "AL", "MS", "LA", "AR", "MO", "OK", "TX", "KS"};
  for (const char* s : north) t.by_state_[s] = Region::N;
  for (const char* s : south) t.by_state_[s] = Region::S;
  return t;
}

RegionTable RegionTable::from_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open region table: " + path);
  RegionTable t;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string state, region;
    if (!std::getline(ls, state, ',') || !std::getline(ls, region)) continue;
    if (first && state == "state") {
      first = false;
      continue;
    }
    first = false;
    t.by_state_[state] = region_from_string(region);
  }
  return t;
}

Region RegionTable::region_of(const SiteId& site) const {
  auto it = by_state_.find(site.state());
  return it == by_state_.end() ? Region::W : it->second;  // unlisted states are West
}

std::map<SiteId, int> count_weekly_obs(const std::vector<WeeklyConcRecord>& weekly,
                                       Chemical chem, const DateTime& start,
                                       const DateTime& end) {
  std::map<SiteId, int> counts;
  for (const auto& w : weekly) {
    if (!(start <= w.date_on && w.date_on <= end)) continue;
    auto it = w.conc.find(chem);
    if (it == w.conc.end() || is_missing(it->second)) continue;
    ++counts[w.site];
  }
  return counts;
}

namespace {

// Qualifying sites ordered by count descending, ties lexicographic.
std::vector<std::pair<SiteId, int>> ranked_candidates(const std::map<SiteId, int>& counts,
                                                      int min_weeks) {
  std::vector<std::pair<SiteId, int>> v;
  for (const auto& [site, c] : counts)
    if (c >= min_weeks) v.emplace_back(site, c);
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return v;
}

}  // namespace

SiteListResult get_sites(const SiteQuery& q, const std::vector<WeeklyConcRecord>& weekly,
                         const RegionTable& regions) {
  if (q.count < 1) throw DataError("get_sites: count must be >= 1");
  if (q.min_weeks < 0) throw DataError("get_sites: min_weeks must be >= 0");
  if (!(q.start <= q.end)) throw DataError("get_sites: start must not be after end");

  SiteListResult res;
  res.counts = count_weekly_obs(weekly, q.chemical, q.start, q.end);
  auto ranked = ranked_candidates(res.counts, q.min_weeks);
  if (q.region != Region::All) {
    std::erase_if(ranked,
                  [&](const auto& p) { return regions.region_of(p.first) != q.region; });
  }
  if (static_cast<int>(ranked.size()) < q.count)
    res.warnings.push_back("only " + std::to_string(ranked.size()) + " of " +
                           std::to_string(q.count) + " requested sites qualify");
  for (int i = 0; i < std::min<int>(q.count, ranked.size()); ++i)
    res.final_list.push_back(ranked[i].first);
  res.start_date = format_datetime(q.start);
  res.end_date = format_datetime(q.end);
  res.comp = to_string(q.chemical);
  return res;
}

double haversine(const SiteMeta& a, const SiteMeta& b) {
  constexpr double R = 6371.0;
  constexpr double deg = M_PI / 180.0;
  const double phi1 = a.latitude * deg, phi2 = b.latitude * deg;
  const double dphi = (b.latitude - a.latitude) * deg;
  const double dlam = (b.longitude - a.longitude) * deg;
  const double s = std::sin(dphi / 2), t = std::sin(dlam / 2);
  const double h = s * s + std::cos(phi1) * std::cos(phi2) * t * t;
  return 2.0 * R * std::asin(std::min(1.0, std::sqrt(h)));
}

SiteListResult max_dist_sites(const SiteQuery& q, const std::vector<WeeklyConcRecord>& weekly,
                              const std::map<SiteId, SiteMeta>& meta) {
  if (q.start_rank < 1) throw DataError("max_dist_sites: start rank must be >= 1");
  SiteListResult res;
  res.counts = count_weekly_obs(weekly, q.chemical, q.start, q.end);
  auto ranked = ranked_candidates(res.counts, q.min_weeks);
  if (static_cast<int>(ranked.size()) < q.count)
    throw DataError("max_dist_sites: only " + std::to_string(ranked.size()) +
                    " qualifying sites for count " + std::to_string(q.count));
  if (q.start_rank > static_cast<int>(ranked.size()))
    throw DataError("max_dist_sites: start rank exceeds qualifying site count");
  for (const auto& [site, c] : ranked) {
    if (!meta.count(site))
      throw DataError("max_dist_sites: site " + site.str() + " missing from site metadata");
  }

  std::vector<SiteId> selected{ranked[q.start_rank - 1].first};
  std::vector<SiteId> pool;
  for (const auto& [site, c] : ranked)
    if (site != selected[0]) pool.push_back(site);

  // min distance to the selected set, maintained incrementally
  std::vector<double> min_dist(pool.size());
  for (size_t i = 0; i < pool.size(); ++i)
    min_dist[i] = haversine(meta.at(pool[i]), meta.at(selected[0]));

  while (static_cast<int>(selected.size()) < q.count) {
    size_t best = 0;
    for (size_t i = 1; i < pool.size(); ++i) {
      if (min_dist[i] > min_dist[best] ||
          (min_dist[i] == min_dist[best] && pool[i] < pool[best]))
        best = i;
    }
    const SiteId pick = pool[best];
    selected.push_back(pick);
    pool.erase(pool.begin() + best);
    min_dist.erase(min_dist.begin() + best);
    for (size_t i = 0; i < pool.size(); ++i)
      min_dist[i] = std::min(min_dist[i], haversine(meta.at(pool[i]), meta.at(pick)));
  }

  res.final_list = std::move(selected);
  res.start_date = format_datetime(q.start);
  res.end_date = format_datetime(q.end);
  res.comp = to_string(q.chemical);
  return res;
}

}  // namespace mesgencov

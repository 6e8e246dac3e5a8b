#pragma once

// NADP/NTN-schema file ingestion.
//
// Weekly file columns:  siteID,dateon,dateoff,yrmonth,<chemical columns>
// Daily file columns:   siteID,date,precip
// Site metadata:        site,latitude,longitude
//
// Negative concentrations (the -9.00 sentinel and any other negative value)
// decode to missing. Unknown chemical columns are ignored with a warning.

#include <map>
#include <string>
#include <vector>

#include "mesgencov/types.hpp"

namespace mesgencov {

struct WeeklyConcRecord {
  SiteId site;
  DateTime date_on;
  DateTime date_off;
  int yrmonth = 0;
  // One slot per chemical; kMissing where unrecorded.
  std::map<Chemical, double> conc;
};

struct DailyPrecipRecord {
  SiteId site;
  Date day;
  double precip = kMissing;  // L, >= 0 when present
};

struct SiteMeta {
  SiteId site;
  double latitude = 0.0;
  double longitude = 0.0;
};

// Parses "%Y-%m-%d %H:%M[:%S]" and "%m/%d/%y[yy] %H:%M". Two-digit years
// below 70 map to 20xx, the rest to 19xx.
DateTime parse_datetime(const std::string& s);
Date parse_date(const std::string& s);

std::vector<WeeklyConcRecord> load_weekly(const std::string& path,
                                          std::vector<std::string>* warnings = nullptr);
std::vector<DailyPrecipRecord> load_daily(const std::string& path);
std::map<SiteId, SiteMeta> load_site_meta(const std::string& path);

// Serialization back to the same schema; missing written as -9.00.
void write_weekly(const std::vector<WeeklyConcRecord>& recs, const std::string& path);
void write_daily(const std::vector<DailyPrecipRecord>& recs, const std::string& path);

std::string format_datetime(const DateTime& dt);
std::string format_date(const Date& d);

}  // namespace mesgencov

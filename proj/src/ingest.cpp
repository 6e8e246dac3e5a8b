#include "mesgencov/ingest.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace mesgencov {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(trim(cur));
  return out;
}

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open file: " + path);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!trim(line).empty()) lines.push_back(line);
  }
  return lines;
}

int expect_int(const std::string& s, const std::string& what, size_t row) {
  try {
    size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("row " + std::to_string(row) + ": bad " + what + " '" + s + "'");
  }
}

double expect_double(const std::string& s, const std::string& what, size_t row) {
  try {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("row " + std::to_string(row) + ": bad " + what + " '" + s + "'");
  }
}

}  // namespace

DateTime parse_datetime(const std::string& raw) {
  const std::string s = trim(raw);
  DateTime dt;
  int sec = 0;
  // ISO form: YYYY-MM-DD HH:MM[:SS]
  if (std::sscanf(s.c_str(), "%d-%d-%d %d:%d:%d", &dt.year, &dt.month, &dt.day, &dt.hour,
                  &dt.minute, &sec) >= 5) {
    // fall through to validation
  } else if (std::sscanf(s.c_str(), "%d/%d/%d %d:%d", &dt.month, &dt.day, &dt.year, &dt.hour,
                         &dt.minute) == 5) {
    if (dt.year < 100) dt.year += (dt.year < 70 ? 2000 : 1900);
  } else {
    throw ParseError("malformed timestamp '" + s + "'");
  }
  if (dt.month < 1 || dt.month > 12 || dt.day < 1 || dt.day > 31 || dt.hour < 0 || dt.hour > 23 ||
      dt.minute < 0 || dt.minute > 59)
    throw ParseError("malformed timestamp '" + s + "'");
  return dt;
}

Date parse_date(const std::string& raw) {
  const std::string s = trim(raw);
  Date d;
  if (std::sscanf(s.c_str(), "%d-%d-%d", &d.year, &d.month, &d.day) == 3) {
  } else if (std::sscanf(s.c_str(), "%d/%d/%d", &d.month, &d.day, &d.year) == 3) {
    if (d.year < 100) d.year += (d.year < 70 ? 2000 : 1900);
  } else {
    throw ParseError("malformed date '" + s + "'");
  }
  if (d.month < 1 || d.month > 12 || d.day < 1 || d.day > 31)
    throw ParseError("malformed date '" + s + "'");
  return d;
}

std::string format_datetime(const DateTime& dt) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d %02d:%02d:00", dt.year, dt.month, dt.day,
                dt.hour, dt.minute);
  return buf;
}

std::string format_date(const Date& d) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
  return buf;
}

std::vector<WeeklyConcRecord> load_weekly(const std::string& path,
                                          std::vector<std::string>* warnings) {
  auto lines = read_lines(path);
  if (lines.empty()) throw DataError("empty weekly file (no header): " + path);
  const auto header = split_csv_line(lines[0]);
  if (header.size() < 4 || header[0] != "siteID" || header[1] != "dateon" ||
      header[2] != "dateoff" || header[3] != "yrmonth")
    throw ParseError("weekly header must start with siteID,dateon,dateoff,yrmonth");

  // Column index -> chemical; unknown columns ignored.
  std::vector<std::pair<size_t, Chemical>> chem_cols;
  for (size_t c = 4; c < header.size(); ++c) {
    if (auto chem = chemical_from_string(header[c])) {
      chem_cols.emplace_back(c, *chem);
    } else if (warnings) {
      warnings->push_back("ignoring unknown column '" + header[c] + "'");
    }
  }

  std::vector<WeeklyConcRecord> recs;
  for (size_t i = 1; i < lines.size(); ++i) {
    const auto f = split_csv_line(lines[i]);
    if (f.size() < 4) throw ParseError("row " + std::to_string(i) + ": too few fields");
    WeeklyConcRecord r;
    try {
      r.site = SiteId(f[0]);
      r.date_on = parse_datetime(f[1]);
      r.date_off = parse_datetime(f[2]);
    } catch (const ParseError& e) {
      throw ParseError("row " + std::to_string(i) + ": " + e.what());
    }
    r.yrmonth = expect_int(f[3], "yrmonth", i);
    if (!(r.date_on < r.date_off))
      throw ParseError("row " + std::to_string(i) + ": dateon must precede dateoff");
    for (auto [col, chem] : chem_cols) {
      double v = kMissing;
      if (col < f.size() && !f[col].empty()) {
        v = expect_double(f[col], "concentration", i);
        if (v < 0.0) v = kMissing;  // sentinel family: any negative means missing
        else if (v == 0.0)
          throw ParseError("row " + std::to_string(i) + ": zero concentration for " +
                           to_string(chem));
      }
      r.conc[chem] = v;
    }
    recs.push_back(std::move(r));
  }

  std::stable_sort(recs.begin(), recs.end(), [](const auto& a, const auto& b) {
    if (a.site != b.site) return a.site < b.site;
    return a.date_on < b.date_on;
  });
  for (size_t i = 1; i < recs.size(); ++i) {
    if (recs[i].site == recs[i - 1].site && recs[i].date_on == recs[i - 1].date_on)
      throw DataError("duplicate weekly record: " + recs[i].site.str() + " at " +
                      format_datetime(recs[i].date_on));
  }
  return recs;
}

std::vector<DailyPrecipRecord> load_daily(const std::string& path) {
  auto lines = read_lines(path);
  if (lines.empty()) throw DataError("empty daily file (no header): " + path);
  const auto header = split_csv_line(lines[0]);
  if (header.size() < 3 || header[0] != "siteID" || header[1] != "date" || header[2] != "precip")
    throw ParseError("daily header must be siteID,date,precip");

  std::vector<DailyPrecipRecord> recs;
  for (size_t i = 1; i < lines.size(); ++i) {
    const auto f = split_csv_line(lines[i]);
    if (f.size() < 3) throw ParseError("row " + std::to_string(i) + ": too few fields");
    DailyPrecipRecord r;
    try {
      r.site = SiteId(f[0]);
      r.day = parse_date(f[1]);
    } catch (const ParseError& e) {
      throw ParseError("row " + std::to_string(i) + ": " + e.what());
    }
    if (!f[2].empty()) {
      double v = expect_double(f[2], "precip", i);
      r.precip = v < 0.0 ? kMissing : v;
    }
    recs.push_back(r);
  }

  std::stable_sort(recs.begin(), recs.end(), [](const auto& a, const auto& b) {
    if (a.site != b.site) return a.site < b.site;
    return a.day < b.day;
  });
  for (size_t i = 1; i < recs.size(); ++i) {
    if (recs[i].site == recs[i - 1].site && recs[i].day == recs[i - 1].day)
      throw DataError("duplicate daily record: " + recs[i].site.str() + " on " +
                      format_date(recs[i].day));
  }
  return recs;
}

std::map<SiteId, SiteMeta> load_site_meta(const std::string& path) {
  auto lines = read_lines(path);
  if (lines.empty()) throw DataError("empty site metadata file: " + path);
  const auto header = split_csv_line(lines[0]);
  if (header.size() < 3 || header[0] != "site" || header[1] != "latitude" ||
      header[2] != "longitude")
    throw ParseError("site metadata header must be site,latitude,longitude");

  std::map<SiteId, SiteMeta> out;
  for (size_t i = 1; i < lines.size(); ++i) {
    const auto f = split_csv_line(lines[i]);
    if (f.size() < 3) throw ParseError("row " + std::to_string(i) + ": too few fields");
    SiteMeta m;
    m.site = SiteId(f[0]);
    m.latitude = expect_double(f[1], "latitude", i);
    m.longitude = expect_double(f[2], "longitude", i);
    if (m.latitude < -90.0 || m.latitude > 90.0)
      throw DataError("site " + m.site.str() + ": latitude out of range");
    if (m.longitude < -180.0 || m.longitude > 180.0)
      throw DataError("site " + m.site.str() + ": longitude out of range");
    if (!out.emplace(m.site, m).second)
      throw DataError("duplicate site metadata: " + m.site.str());
  }
  return out;
}

namespace {
std::string conc_str(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", is_missing(v) ? -9.00 : v);
  return buf;
}
}  // namespace

void write_weekly(const std::vector<WeeklyConcRecord>& recs, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  out << "siteID,dateon,dateoff,yrmonth";
  for (Chemical c : all_chemicals()) out << "," << to_string(c);
  out << "\n";
  for (const auto& r : recs) {
    out << r.site.str() << "," << format_datetime(r.date_on) << "," << format_datetime(r.date_off)
        << "," << r.yrmonth;
    for (Chemical c : all_chemicals()) {
      auto it = r.conc.find(c);
      out << "," << conc_str(it == r.conc.end() ? kMissing : it->second);
    }
    out << "\n";
  }
}

void write_daily(const std::vector<DailyPrecipRecord>& recs, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  out << "siteID,date,precip\n";
  for (const auto& r : recs)
    out << r.site.str() << "," << format_date(r.day) << "," << conc_str(r.precip) << "\n";
}

}  // namespace mesgencov

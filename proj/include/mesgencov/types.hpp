#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace mesgencov {

// Missing observations are carried as quiet NaN; the CSV sentinel is -9.00.
inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

inline bool is_missing(double v) { return std::isnan(v); }

class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class DataError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// 4-character NTN site code: two uppercase letters + two digits, e.g. "NY52".
class SiteId {
public:
  SiteId() = default;
  explicit SiteId(const std::string& code) : code_(code) {
    if (!valid(code)) throw ParseError("invalid site id: '" + code + "'");
  }

  static bool valid(const std::string& c) {
    return c.size() == 4 && std::isupper(static_cast<unsigned char>(c[0])) &&
           std::isupper(static_cast<unsigned char>(c[1])) &&
           std::isdigit(static_cast<unsigned char>(c[2])) &&
           std::isdigit(static_cast<unsigned char>(c[3]));
  }

  const std::string& str() const { return code_; }
  std::string state() const { return code_.substr(0, 2); }

  friend bool operator==(const SiteId& a, const SiteId& b) { return a.code_ == b.code_; }
  friend bool operator!=(const SiteId& a, const SiteId& b) { return a.code_ != b.code_; }
  friend bool operator<(const SiteId& a, const SiteId& b) { return a.code_ < b.code_; }

private:
  std::string code_;
};

enum class Chemical { Ca, Mg, K, Na, NH4, NO3, Cl, SO4, ph, H };

inline const std::array<Chemical, 10>& all_chemicals() {
  static const std::array<Chemical, 10> a = {
      Chemical::Ca, Chemical::Mg, Chemical::K,   Chemical::Na, Chemical::NH4,
      Chemical::NO3, Chemical::Cl, Chemical::SO4, Chemical::ph, Chemical::H};
  return a;
}

inline std::string to_string(Chemical c) {
  switch (c) {
    case Chemical::Ca: return "Ca";
    case Chemical::Mg: return "Mg";
    case Chemical::K: return "K";
    case Chemical::Na: return "Na";
    case Chemical::NH4: return "NH4";
    case Chemical::NO3: return "NO3";
    case Chemical::Cl: return "Cl";
    case Chemical::SO4: return "SO4";
    case Chemical::ph: return "ph";
    case Chemical::H: return "H";
  }
  throw std::logic_error("unreachable");
}

inline std::optional<Chemical> chemical_from_string(const std::string& s) {
  for (Chemical c : all_chemicals())
    if (to_string(c) == s) return c;
  return std::nullopt;
}

// Minute-resolution civil timestamp, UTC.
struct DateTime {
  int year = 1970;
  int month = 1;   // 1..12
  int day = 1;     // 1..31
  int hour = 0;
  int minute = 0;

  // Days since 1970-01-01 (proleptic Gregorian).
  static std::int64_t days_from_civil(int y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const std::int64_t yoe = y - era * 400;
    const std::int64_t doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const std::int64_t doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + doe - 719468;
  }

  static void civil_from_days(std::int64_t z, int& y, int& m, int& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const std::int64_t doe = z - era * 146097;
    const std::int64_t yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const std::int64_t mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y = static_cast<int>(yoe + era * 400 + (m <= 2));
  }

  std::int64_t minutes_since_epoch() const {
    return days_from_civil(year, month, day) * 1440 + hour * 60 + minute;
  }

  int yrmonth() const { return year * 100 + month; }

  friend bool operator==(const DateTime& a, const DateTime& b) {
    return a.minutes_since_epoch() == b.minutes_since_epoch();
  }
  friend bool operator<(const DateTime& a, const DateTime& b) {
    return a.minutes_since_epoch() < b.minutes_since_epoch();
  }
  friend bool operator<=(const DateTime& a, const DateTime& b) {
    return a.minutes_since_epoch() <= b.minutes_since_epoch();
  }
};

struct Date {
  int year = 1970;
  int month = 1;
  int day = 1;

  std::int64_t days() const { return DateTime::days_from_civil(year, month, day); }

  friend bool operator==(const Date& a, const Date& b) { return a.days() == b.days(); }
  friend bool operator<(const Date& a, const Date& b) { return a.days() < b.days(); }
};

// Number of whole calendar months from the month containing `a` through the
// month containing `b`, inclusive. a must not be after b.
inline int months_inclusive(const DateTime& a, const DateTime& b) {
  return (b.year - a.year) * 12 + (b.month - a.month) + 1;
}

inline int yrmonth_at_offset(int start_yrmonth, int t) {
  int y = start_yrmonth / 100, m = start_yrmonth % 100;
  int idx = y * 12 + (m - 1) + t;
  return (idx / 12) * 100 + (idx % 12) + 1;
}

inline int yrmonth_offset(int start_yrmonth, int yrmonth) {
  int y0 = start_yrmonth / 100, m0 = start_yrmonth % 100;
  int y1 = yrmonth / 100, m1 = yrmonth % 100;
  return (y1 * 12 + m1) - (y0 * 12 + m0);
}

}  // namespace mesgencov

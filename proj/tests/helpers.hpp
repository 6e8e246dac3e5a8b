#pragma once

// Shared fixture helpers for the unit tests.

#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include "mesgencov/ingest.hpp"
#include "mesgencov/types.hpp"

namespace testutil {

// Fresh scratch directory under the system temp dir, removed on destruction.
class TempDir {
public:
  explicit TempDir(const std::string& tag) {
    dir_ = std::filesystem::temp_directory_path() /
           ("mesgencov_test_" + tag + "_" + std::to_string(counter_++));
    std::filesystem::create_directories(dir_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(dir_, ec);
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string str() const { return dir_.string(); }

private:
  std::filesystem::path dir_;
  static inline int counter_ = 0;
};

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

inline mesgencov::DateTime dt(int y, int m, int d, int hh = 0, int mm = 0) {
  return mesgencov::DateTime{y, m, d, hh, mm};
}

// One weekly record carrying a single chemical value.
inline mesgencov::WeeklyConcRecord week(const std::string& site, mesgencov::DateTime on,
                                        mesgencov::DateTime off, int yrmonth,
                                        mesgencov::Chemical chem, double value) {
  mesgencov::WeeklyConcRecord r;
  r.site = mesgencov::SiteId(site);
  r.date_on = on;
  r.date_off = off;
  r.yrmonth = yrmonth;
  r.conc[chem] = value;
  return r;
}

inline mesgencov::DailyPrecipRecord daily(const std::string& site, int y, int m, int d,
                                          double precip) {
  mesgencov::DailyPrecipRecord r;
  r.site = mesgencov::SiteId(site);
  r.day = mesgencov::Date{y, m, d};
  r.precip = precip;
  return r;
}

inline std::vector<double> normal_sample(int n, unsigned seed, double mu = 0.0,
                                         double sigma = 1.0) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> nd(mu, sigma);
  std::vector<double> x(n);
  for (auto& v : x) v = nd(gen);
  return x;
}

}  // namespace testutil

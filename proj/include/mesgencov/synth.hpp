#pragma once

// Desk-scale synthetic fixture generator: weekly/daily CSVs whose monthly
// aggregates follow the trend + Fourier model with known parameters.

#include <cstdint>
#include <string>
#include <vector>

#include "mesgencov/fit.hpp"
#include "mesgencov/ingest.hpp"

namespace mesgencov {

struct SynthSpec {
  std::uint64_t seed = 0;
  int n_sites = 3;
  int months = 72;
  double missing_rate = 0.0;  // probability a month's weekly record goes missing
  double noise_sigma = 0.1;   // log-scale Gaussian noise
  double heavy_tail_delta = 0.0;  // >0 adds Lambert W tails to the noise
  ModelSpec model;
  Chemical chemical = Chemical::SO4;
  int start_year = 1983;
};

struct SynthTruth {
  SiteId site;
  std::vector<double> coeffs;  // matches design_matrix column order
  double sigma = 0.0;
  double latitude = 0.0;
  double longitude = 0.0;
};

struct SynthData {
  std::vector<WeeklyConcRecord> weekly;
  std::vector<DailyPrecipRecord> daily;
  std::vector<SiteMeta> meta;
  std::vector<SynthTruth> truth;
  DateTime window_start;
  DateTime window_end;
};

SynthData generate_synthetic(const SynthSpec& spec);

// Writes weekly.csv, daily.csv, sites.csv, truth.json under out_dir.
void write_synthetic(const SynthData& data, const std::string& out_dir);

}  // namespace mesgencov

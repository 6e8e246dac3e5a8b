#pragma once

// Deterministic random draws. std::normal_distribution's sequence is
// implementation-defined, so normal variates come from an explicit
// Box-Muller over mt19937_64 to keep fixtures stable.

#include <cmath>
#include <cstdint>
#include <random>
#include <string>

namespace mesgencov {

class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform() {
    // 53-bit uniform in (0, 1).
    return ((gen_() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
  }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform(), u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * M_PI * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

  std::uint64_t next_u64() { return gen_(); }

private:
  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// FNV-1a combination of a global seed with a stream label, so each
// (site, chemical) stream is independent of processing order.
inline std::uint64_t derive_seed(std::uint64_t global, const std::string& label) {
  std::uint64_t h = 14695981039346656037ull ^ global;
  for (char c : label) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace mesgencov

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace vrm {

// Seedable deterministic random stream. All draws are derived from the raw
// mt19937_64 output so that a given seed reproduces the same sequence on any
// platform, independent of the standard library's distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix(seed)) {}

  std::uint64_t seed() const { return seed_; }

  // Uniform double in [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, bound). bound must be positive.
  std::uint64_t uniform_int(std::uint64_t bound) {
    // rejection sampling keeps the draw exactly uniform
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

  // Standard normal via Marsaglia polar; pairs are cached.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u, v, s;
    do {
      u = 2.0 * uniform() - 1.0;
      v = 2.0 * uniform() - 1.0;
      s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    has_spare_ = true;
    return u * m;
  }

  // Independent child stream; distinct `stream` values give distinct streams.
  Rng fork(std::uint64_t stream) const {
    return Rng(splitmix(seed_ ^ (0x9e3779b97f4a7c15ull + stream)));
  }

 private:
  static std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }

  std::uint64_t seed_;
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace vrm

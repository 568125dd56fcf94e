#pragma once

#include <cstdint>
#include <random>

namespace dirac {

/// Seeded sampler over std::mt19937_64 (the standard MT19937-64 algorithm).
/// Reals use the top 53 bits of each 64-bit draw, u = (x >> 11) * 2^-53, so
/// tables are reproducible by any MT19937-64 implementation given the seed.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
  /// Integer in [0, n); modulo bias is below 2^-40 for the n used here.
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace dirac

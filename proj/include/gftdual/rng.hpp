#pragma once

#include <cstdint>
#include <random>

namespace gftdual {

struct RngSeed {
  std::uint64_t value = 0;
};

/// Deterministic generator used everywhere randomness is needed.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. The distributions are implemented here rather than taken from
/// <random> because the standard leaves those implementation-defined, which
/// would make outputs differ between standard libraries.
///
/// Stream splitting: the r-th independent stream under a master seed s is
/// `Rng(RngSeed{s + r})`. Composite keys (for example an experiment trial) are
/// folded into one seed with `derive_seed`.
class Rng {
 public:
  explicit Rng(RngSeed seed) : engine_(seed.value) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 bits of resolution.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound) by rejection; bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % bound;
  }

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer; used to fold several keys into one seed.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr RngSeed derive_seed(RngSeed base, std::uint64_t a, std::uint64_t b = 0) {
  return RngSeed{mix64(mix64(mix64(base.value) ^ a) ^ b)};
}

}  // namespace gftdual

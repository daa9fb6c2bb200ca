#pragma once

#include <cstdint>
#include <random>

namespace degconn {

/// Random stream contract.
///
/// Every random draw in the library goes through Rng, a thin wrapper over
/// std::mt19937_64 (whose output sequence is fixed by the C++ standard).
///   - next():      one raw 64-bit engine output.
///   - below(b):    t = (2^64 - b) mod b; draw x = next() until x >= t;
///                  return x mod b.  Unbiased, one or more raw draws.
///   - coin():      below(2).
///   - unit():      (next() >> 11) * 2^-53, in [0, 1).
/// Per-trial streams are seeded with trial_seed(seed, trial), built from the
/// SplitMix64 finalizer, so a port only needs mt19937_64 and mix64 to
/// reproduce every trial.

/// SplitMix64 output function.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seed of the independent stream used by trial `trial` of an experiment.
constexpr std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) noexcept {
  return mix64(seed ^ mix64(trial));
}

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      const std::uint64_t x = engine_();
      if (x >= threshold) return x % bound;
    }
  }

  bool coin() { return below(2) == 1; }

  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace degconn

#pragma once

#include <cstdint>
#include <vector>

namespace polyflow {

/// Deterministic RNG (splitmix64) with hand-rolled double generation so that
/// identical seeds give identical streams on every platform and standard
/// library. std::uniform_real_distribution is implementation-defined and
/// would break byte-for-byte reproducibility of CLI artifacts.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  /// Uniform integer in [lo, hi] inclusive.
  int uniform_int(int lo, int hi) {
    if (hi <= lo) return lo;
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(next_u64() % span);
  }

  /// n sorted values in [lo, hi] with pairwise gaps >= min_gap (rejection sampling).
  std::vector<double> separated_roots(int n, double lo, double hi, double min_gap);

 private:
  std::uint64_t state_;
};

}  // namespace polyflow

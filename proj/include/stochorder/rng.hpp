#pragma once

#include <cmath>
#include <cstdint>

namespace stochorder {

/// Stateless counter-based generator (SplitMix64 finalizer over seed + counter).
/// Sample i of a run depends only on (seed, i), so worker partitioning cannot
/// change the stream.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  std::uint64_t bits(std::uint64_t counter) const {
    std::uint64_t z = seed_ + counter * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Uniform on the open interval (0, 1); both endpoints unreachable even
  /// after rounding (extremes are 2^-53 and 1 - 2^-53).
  double uniform(std::uint64_t counter) const {
    return (static_cast<double>(bits(counter) >> 12) + 0.5) * 0x1.0p-52;
  }

  double uniform_range(std::uint64_t counter, double lo, double hi) const {
    return lo + (hi - lo) * uniform(counter);
  }

  double log_uniform(std::uint64_t counter, double lo, double hi) const {
    return std::exp(uniform_range(counter, std::log(lo), std::log(hi)));
  }

  std::uint64_t seed() const { return seed_; }

  /// Independent substream keyed by `stream`.
  CounterRng split(std::uint64_t stream) const {
    return CounterRng(bits(0xD1B54A32D192ED03ull + stream));
  }

 private:
  std::uint64_t seed_;
};

}  // namespace stochorder

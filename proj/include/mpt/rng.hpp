#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>

namespace mpt {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Deterministic draw source. All transforms are written out explicitly so a
// given seed produces the same stream on every platform and toolchain.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1), 53 random bits.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double exponential(double mean) { return -mean * std::log1p(-uniform()); }

  /// Sum of `shape` independent exponentials of the given mean.
  double erlang(int shape, double mean_each) {
    double sum = 0.0;
    for (int i = 0; i < shape; ++i) sum += exponential(mean_each);
    return sum;
  }

  bool bernoulli(double p) { return uniform() < p; }

  /// Index i with probability (cum[i] - cum[i-1]) / cum.back().
  std::size_t weighted_index(std::span<const double> cumulative) {
    const double u = uniform() * cumulative.back();
    std::size_t lo = 0, hi = cumulative.size() - 1;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (u < cumulative[mid]) hi = mid;
      else lo = mid + 1;
    }
    return lo;
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace mpt

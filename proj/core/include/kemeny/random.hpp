#pragma once

#include <cstdint>

namespace kemeny {

/// SplitMix64 finalizer.
constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Counter-based generator: the i-th output is a pure function of (seed, i),
/// so streams are reproducible on every platform and can be split freely.
class CounterRng {
 public:
  explicit constexpr CounterRng(std::uint64_t seed) noexcept : seed_(seed) {}

  constexpr std::uint64_t next_u64() noexcept {
    return splitmix64(seed_ + 0x9E3779B97F4A7C15ULL * ++counter_);
  }

  /// Uniform in [0, 1) with 53 random bits.
  constexpr double next_uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  constexpr std::uint64_t counter() const noexcept { return counter_; }
  constexpr std::uint64_t seed() const noexcept { return seed_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_ = 0;
};

/// Per-trial seed derived from a master seed. Trial indices start at 0.
constexpr std::uint64_t trial_seed(std::uint64_t master, std::uint64_t trial) noexcept {
  return splitmix64(master ^ (0x9E3779B97F4A7C15ULL * (trial + 1)));
}

}  // namespace kemeny

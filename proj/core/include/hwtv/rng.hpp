#pragma once

#include <cstdint>

namespace hwtv {

// Counter-based SplitMix64: draw i of stream `seed` is
// mix64(seed + (i + 1) * 0x9E3779B97F4A7C15), with the finalizer from
// Steele, Lea & Flood (2014). Any implementation of that recipe reproduces
// the exact stream; draws can be regenerated from (seed, i) alone.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t counter = 0) noexcept
      : seed_(seed), counter_(counter) {}

  static std::uint64_t at(std::uint64_t seed, std::uint64_t index) noexcept {
    std::uint64_t z = seed + (index + 1) * 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  std::uint64_t next_u64() noexcept { return at(seed_, counter_++); }

  // Uniform on (0, 1]: 53 random bits, offset by one ulp so zero never occurs.
  double next_uniform_open_zero() noexcept {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // Uniform on [0, 1).
  double next_uniform() noexcept { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  std::uint64_t counter() const noexcept { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_;
};

}  // namespace hwtv

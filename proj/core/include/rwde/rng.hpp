#pragma once

#include <cstdint>
#include <limits>

namespace rwde {

/// SplitMix64 (Steele, Lea, Flood 2014): a 64-bit counter-based generator.
/// Satisfies UniformRandomBitGenerator, so it plugs into <random> distributions.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  result_type operator()() {
    state_ += kGamma;
    return mix(state_);
  }

  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;

 private:
  std::uint64_t state_;
};

/// Independent stream for sample `index` of a run seeded with `seed`. Every
/// Monte Carlo loop draws sample i from substream(seed, i), so results do not
/// depend on how samples are scheduled.
inline SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
  return SplitMix64(SplitMix64::mix(SplitMix64::mix(seed) + (index + 1) * SplitMix64::kGamma));
}

}  // namespace rwde

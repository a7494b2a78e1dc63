#pragma once

// Counter-based substreams.
//
// Every random quantity in the toolkit is drawn from a substream identified
// by (seed, index), where index is the excursion / chain number. The
// derivation is:
//
//   key      = seed XOR mix64(index)
//   state[k] = mix64(key + (k + 1) * 0x9E3779B97F4A7C15),  k = 0..3
//
// with mix64 the SplitMix64 finalizer. The resulting 256-bit state drives a
// xoshiro256** generator. Because the stream depends only on (seed, index),
// the assignment of excursions to worker threads never changes results.

#include <array>
#include <cstdint>
#include <limits>

namespace rgfn {

constexpr std::uint64_t kGoldenGamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// xoshiro256** (Blackman & Vigna). Satisfies UniformRandomBitGenerator.
class Rng {
 public:
  using result_type = std::uint64_t;

  constexpr explicit Rng(const std::array<std::uint64_t, 4>& state) noexcept
      : s_(state) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept {
    return std::numeric_limits<result_type>::max();
  }

  constexpr result_type operator()() noexcept {
    const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  /// Uniform double in [0, 1) with 53 bits of resolution.
  constexpr double uniform() noexcept {
    return static_cast<double>((*this)() >> 11) * 0x1.0p-53;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }

  std::array<std::uint64_t, 4> s_;
};

constexpr Rng substream(std::uint64_t seed, std::uint64_t index) noexcept {
  const std::uint64_t key = seed ^ mix64(index);
  std::array<std::uint64_t, 4> state{};
  for (std::uint64_t k = 0; k < 4; ++k) state[k] = mix64(key + (k + 1) * kGoldenGamma);
  return Rng(state);
}

}  // namespace rgfn

#pragma once

#include <cstdint>

namespace qswitch {

// SplitMix64 (Steele, Lea & Flood). The k-th output of a stream keyed by s
// is mix64(s + k*gamma): the generator is counter-based, so any draw is
// addressable by (key, counter) and independent of how work is split across
// threads. All Monte Carlo code derives one stream per sample index from the
// user seed, which makes results bitwise identical for any worker count.

inline constexpr std::uint64_t kSplitMixGamma = 0x9E3779B97F4A7C15ull;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}

  constexpr std::uint64_t next() noexcept {
    state_ += kSplitMixGamma;
    return mix64(state_);
  }

  // Uniform in [0, 1), 53 random bits.
  double next_double() noexcept {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t state_;
};

// Key of a decorrelated sub-stream (per Monte Carlo sample, per sweep cell).
constexpr std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t index) noexcept {
  return mix64(seed ^ mix64(index + kSplitMixGamma));
}

}  // namespace qswitch

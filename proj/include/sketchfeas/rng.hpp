#pragma once

// Counter-based randomness. A stream is a 64-bit key; draw i of the stream is
// splitmix64's finalizer applied to key + (i + 1)·φ, where φ is the 64-bit
// golden-ratio increment. Draws can therefore be computed in any order and by
// any thread, and a (key, index) pair always yields the same bits.
//
// Seed derivation: derive_seed(s, i) = mix64(mix64(s) + (i + 1)·0x632BE59BD9B4E019),
// and derive_seed(s, i, j) = derive_seed(derive_seed(s, i), j).

#include <cstdint>
#include <limits>

namespace sketchfeas::rng {

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return mix64(mix64(seed) + (index + 1) * 0x632BE59BD9B4E019ULL);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t i,
                                    std::uint64_t j) noexcept {
  return derive_seed(derive_seed(seed, i), j);
}

// Uniform on the open interval (0, 1) from the top 53 bits.
constexpr double to_unit_open(std::uint64_t bits) noexcept {
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

class CounterStream {
 public:
  explicit constexpr CounterStream(std::uint64_t key) noexcept : key_(key) {}

  constexpr std::uint64_t bits(std::uint64_t index) const noexcept {
    return mix64(key_ + (index + 1) * kGolden);
  }
  constexpr double uniform(std::uint64_t index) const noexcept { return to_unit_open(bits(index)); }
  // Standard normal number `index` of the stream (256-layer ziggurat). The
  // fast path uses draw `index` alone; the rare rejections continue on the
  // stream derive_seed(key, index), so the value depends only on (key, index).
  double normal(std::uint64_t index) const noexcept;

  constexpr std::uint64_t key() const noexcept { return key_; }

 private:
  double normal_slow(std::uint64_t index, std::uint64_t first_bits) const noexcept;

  std::uint64_t key_;
};

// UniformRandomBitGenerator over a CounterStream, for use with <random>
// distributions where sequential draws are fine.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit constexpr SplitMix64(std::uint64_t seed) noexcept : stream_(seed) {}

  static constexpr result_type min() noexcept { return 0; }
  static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }
  constexpr result_type operator()() noexcept { return stream_.bits(counter_++); }

  double uniform() noexcept { return to_unit_open((*this)()); }

 private:
  CounterStream stream_;
  std::uint64_t counter_ = 0;
};

}  // namespace sketchfeas::rng

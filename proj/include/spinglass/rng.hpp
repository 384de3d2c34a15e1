#pragma once

#include <array>
#include <cstdint>
#include <utility>

namespace spinglass {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
///
/// Every output block is a pure function of (key, counter), so draws can be
/// addressed directly by index and generated in any order or thread.
class Philox4x32 {
 public:
  using Block = std::array<std::uint32_t, 4>;

  explicit constexpr Philox4x32(std::uint64_t key) noexcept
      : key_{static_cast<std::uint32_t>(key), static_cast<std::uint32_t>(key >> 32)} {}

  constexpr Block operator()(std::uint64_t counter_hi, std::uint64_t counter_lo) const noexcept {
    Block ctr{static_cast<std::uint32_t>(counter_lo), static_cast<std::uint32_t>(counter_lo >> 32),
              static_cast<std::uint32_t>(counter_hi), static_cast<std::uint32_t>(counter_hi >> 32)};
    std::array<std::uint32_t, 2> key = key_;
    for (int round = 0; round < 10; ++round) {
      const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
      const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
      ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
             static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
      key[0] += kWeyl0;
      key[1] += kWeyl1;
    }
    return ctr;
  }

 private:
  static constexpr std::uint32_t kMul0 = 0xD2511F53;
  static constexpr std::uint32_t kMul1 = 0xCD9E8D57;
  static constexpr std::uint32_t kWeyl0 = 0x9E3779B9;
  static constexpr std::uint32_t kWeyl1 = 0xBB67AE85;
  std::array<std::uint32_t, 2> key_;
};

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Seed of stream `index` derived from a master seed; independent of evaluation order.
constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) noexcept {
  return mix64(mix64(master) ^ mix64(index + 0x632BE59BD9B4E019ULL));
}

/// Standard normal variates addressed by counter.
///
/// Each counter value yields one Philox block; its two 64-bit halves become
/// u1 in (0, 1] and u2 in [0, 1) with 53-bit resolution, and the Box-Muller
/// transform turns them into the pair (r cos 2 pi u2, r sin 2 pi u2) with
/// r = sqrt(-2 ln u1).
class NormalStream {
 public:
  explicit constexpr NormalStream(std::uint64_t key) noexcept : philox_(key) {}

  std::pair<double, double> pair(std::uint64_t counter) const noexcept;

  /// Normal variate number n of the stream (two per counter).
  double operator[](std::uint64_t n) const noexcept {
    const auto [a, b] = pair(n >> 1);
    return (n & 1U) == 0 ? a : b;
  }

 private:
  Philox4x32 philox_;
};

}  // namespace spinglass

#pragma once

#include <bit>
#include <cstdint>
#include <string>

namespace spinglass {

/// Bit-coded basis state: bit i set <=> qubit i is up.
__extension__ typedef unsigned __int128 Pattern;

inline constexpr int kMaxQubits = 128;

constexpr Pattern bit(int i) noexcept { return Pattern{1} << i; }

constexpr bool test_bit(Pattern p, int i) noexcept { return ((p >> i) & 1U) != 0; }

constexpr int popcount(Pattern p) noexcept {
  return std::popcount(static_cast<std::uint64_t>(p)) +
         std::popcount(static_cast<std::uint64_t>(p >> 64));
}

/// Index of the lowest set bit; undefined for p == 0.
constexpr int lowest_bit(Pattern p) noexcept {
  const auto lo = static_cast<std::uint64_t>(p);
  return lo != 0 ? std::countr_zero(lo) : 64 + std::countr_zero(static_cast<std::uint64_t>(p >> 64));
}

/// All-ones mask over the low L bits.
constexpr Pattern low_mask(int L) noexcept { return L >= 128 ? ~Pattern{0} : bit(L) - 1; }

/// Next larger integer with the same popcount (Gosper's hack). p must be nonzero.
constexpr Pattern next_same_popcount(Pattern p) noexcept {
  const Pattern lowest = p & (~p + 1);
  const Pattern ripple = p + lowest;
  return ripple | (((p ^ ripple) >> 2) / lowest);
}

/// Bit string of length L, most significant (qubit L-1) first.
inline std::string to_bit_string(Pattern p, int L) {
  std::string s(static_cast<std::size_t>(L), '0');
  for (int i = 0; i < L; ++i) {
    if (test_bit(p, i)) s[static_cast<std::size_t>(L - 1 - i)] = '1';
  }
  return s;
}

}  // namespace spinglass

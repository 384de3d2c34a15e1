#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "spinglass/bits.hpp"

namespace spinglass {

/// Largest sector dimension a SectorBasis will enumerate.
inline constexpr std::uint64_t kDefaultMaxDimension = 20'000'000;

/// Binomial coefficient C(n, k); saturates at UINT64_MAX instead of overflowing.
std::uint64_t binomial(int n, int k) noexcept;

/// A swap-connected basis state: same pattern with the spins at i and j exchanged.
struct PairPartner {
  std::size_t index;
  Pattern pattern;
};

/// All L-bit patterns with exactly m set bits, in ascending integer order.
///
/// Ascending order coincides with the colexicographic order of the set-bit
/// positions c_1 < ... < c_m, so the rank of a pattern is
/// sum_t C(c_t, t) (combinatorial number system) and never needs a search.
class SectorBasis {
 public:
  SectorBasis(int L, int m, std::uint64_t max_dimension = kDefaultMaxDimension);

  int qubits() const noexcept { return L_; }
  int particles() const noexcept { return m_; }
  std::size_t size() const noexcept { return states_.size(); }

  std::span<const Pattern> states() const noexcept { return states_; }
  Pattern operator[](std::size_t k) const noexcept { return states_[k]; }
  Pattern unrank(std::size_t k) const;

  /// Index of a pattern; throws InvalidArgument on wrong popcount or stray high bits.
  std::size_t rank(Pattern p) const;

  /// Rank without validation. p must have popcount m and no bits at or above L.
  std::size_t rank_unchecked(Pattern p) const noexcept {
    std::size_t r = 0;
    int t = 0;
    while (p != 0) {
      const int c = lowest_bit(p);
      r += binom_[static_cast<std::size_t>(c) * stride_ + static_cast<std::size_t>(++t)];
      p &= p - 1;
    }
    return r;
  }

  /// The partner of state k under exchange of qubits i and j, if the spins differ there.
  std::optional<PairPartner> pair_partner(std::size_t k, int i, int j) const;

  /// List form of pair_partner: empty when the spins at i and j agree.
  std::vector<PairPartner> pair_partners(std::size_t k, int i, int j) const;

  bool operator==(const SectorBasis& other) const noexcept {
    return L_ == other.L_ && m_ == other.m_;
  }

 private:
  int L_;
  int m_;
  std::size_t stride_;
  std::vector<std::uint64_t> binom_;  // C(n, k) for n < L, k <= m, row-major
  std::vector<Pattern> states_;
};

using BasisPtr = std::shared_ptr<const SectorBasis>;

/// Validated construction of the (L, m) sector basis.
BasisPtr build_basis(int L, int m, std::uint64_t max_dimension = kDefaultMaxDimension);

}  // namespace spinglass

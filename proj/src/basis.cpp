#include "spinglass/basis.hpp"

#include <limits>
#include <string>

#include "spinglass/error.hpp"

namespace spinglass {

std::uint64_t binomial(int n, int k) noexcept {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  Pattern r = 1;
  for (int i = 1; i <= k; ++i) {
    r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (r > kMax) return kMax;
  }
  return static_cast<std::uint64_t>(r);
}

SectorBasis::SectorBasis(int L, int m, std::uint64_t max_dimension)
    : L_(L), m_(m), stride_(static_cast<std::size_t>(m) + 1) {
  if (L < 1 || L > kMaxQubits) {
    throw InvalidArgument("qubit count L=" + std::to_string(L) + " outside [1, 128]");
  }
  if (m < 0 || m > L) {
    throw InvalidArgument("particle number m=" + std::to_string(m) + " outside [0, L]");
  }
  const std::uint64_t dim = binomial(L, m);
  if (dim > max_dimension) {
    throw DimensionOverflow("sector C(" + std::to_string(L) + "," + std::to_string(m) +
                            ") exceeds the dimension budget of " + std::to_string(max_dimension));
  }

  binom_.resize(static_cast<std::size_t>(L) * stride_);
  for (int n = 0; n < L; ++n) {
    for (int k = 0; k <= m; ++k) {
      binom_[static_cast<std::size_t>(n) * stride_ + static_cast<std::size_t>(k)] = binomial(n, k);
    }
  }

  states_.reserve(dim);
  if (m == 0) {
    states_.push_back(0);
    return;
  }
  Pattern p = low_mask(m);
  for (std::uint64_t k = 0; k < dim; ++k) {
    states_.push_back(p);
    if (k + 1 < dim) p = next_same_popcount(p);
  }
}

Pattern SectorBasis::unrank(std::size_t k) const {
  if (k >= states_.size()) {
    throw InvalidArgument("index " + std::to_string(k) + " outside sector of dimension " +
                          std::to_string(states_.size()));
  }
  return states_[k];
}

std::size_t SectorBasis::rank(Pattern p) const {
  if ((p & ~low_mask(L_)) != 0) {
    throw InvalidArgument("pattern has bits set at or above L=" + std::to_string(L_));
  }
  if (popcount(p) != m_) {
    throw InvalidArgument("pattern popcount " + std::to_string(popcount(p)) +
                          " does not match particle number " + std::to_string(m_));
  }
  return rank_unchecked(p);
}

std::optional<PairPartner> SectorBasis::pair_partner(std::size_t k, int i, int j) const {
  if (i == j || i < 0 || j < 0 || i >= L_ || j >= L_) {
    throw InvalidArgument("pair (" + std::to_string(i) + "," + std::to_string(j) +
                          ") is not two distinct qubits");
  }
  const Pattern p = unrank(k);
  if (test_bit(p, i) == test_bit(p, j)) return std::nullopt;
  const Pattern q = p ^ (bit(i) | bit(j));
  return PairPartner{rank_unchecked(q), q};
}

std::vector<PairPartner> SectorBasis::pair_partners(std::size_t k, int i, int j) const {
  std::vector<PairPartner> out;
  if (auto partner = pair_partner(k, i, j)) out.push_back(*partner);
  return out;
}

BasisPtr build_basis(int L, int m, std::uint64_t max_dimension) {
  return std::make_shared<const SectorBasis>(L, m, max_dimension);
}

}  // namespace spinglass

#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "spinglass/basis.hpp"

namespace spinglass {

using VectorRef = Eigen::Ref<const Eigen::VectorXd>;

/// Normalized real state of a definite-particle sector.
class DefiniteParticleState {
 public:
  /// Throws InvalidArgument unless the coefficients have unit norm (to 1e-12).
  DefiniteParticleState(BasisPtr basis, Eigen::VectorXd coefficients);

  /// Normalizes the given vector; throws InvalidArgument for the zero vector.
  static DefiniteParticleState normalized(BasisPtr basis, Eigen::VectorXd coefficients);

  const SectorBasis& basis() const noexcept { return *basis_; }
  const BasisPtr& basis_ptr() const noexcept { return basis_; }
  const Eigen::VectorXd& coefficients() const noexcept { return a_; }
  double operator[](std::size_t k) const noexcept { return a_[static_cast<Eigen::Index>(k)]; }

 private:
  BasisPtr basis_;
  Eigen::VectorXd a_;
};

/// The two-spin reduced density matrix of a definite-particle state.
///
/// In the ordered basis (up-up, up-down, down-up, down-down) of qubits (i, j):
///
///     | v 0 0 0 |
///     | 0 w z 0 |
///     | 0 z x 0 |
///     | 0 0 0 y |
///
/// w is the (i up, j down) population and x the (i down, j up) population.
struct PairRDM {
  int i = 0;
  int j = 0;
  double v = 0.0;
  double w = 0.0;
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  Eigen::Matrix4d matrix() const;
};

/// Accumulates (v, w, x, y, z) for one pair by a single pass over the basis.
PairRDM pair_rdm(const SectorBasis& basis, const VectorRef& a, int i, int j);
PairRDM pair_rdm(const DefiniteParticleState& psi, int i, int j);

/// Every pair i < j in lexicographic order, computed in one pass over the basis.
std::vector<PairRDM> all_pair_rdms(const SectorBasis& basis, const VectorRef& a);

/// max(2(|z| - sqrt(v y)), 0).
double concurrence(const PairRDM& r) noexcept;

using ConcurrenceFn = double (*)(const PairRDM&);

struct PairStatistics {
  double average_concurrence = 0.0;  // mean over all C(L, 2) pairs
  double entangled_fraction = 0.0;   // share of pairs with C > 0
};

PairStatistics pair_statistics(const SectorBasis& basis, const VectorRef& a,
                               ConcurrenceFn fn = &concurrence);

double average_concurrence(const SectorBasis& basis, const VectorRef& a);
double average_concurrence(const DefiniteParticleState& psi);

/// Rank of the configuration {i, j} (i < j) in every (L, 2) sector.
constexpr std::size_t pair_index(int i, int j) noexcept {
  return static_cast<std::size_t>(i) + static_cast<std::size_t>(j) * static_cast<std::size_t>(j - 1) / 2;
}

// Basis-free kernels for m = 1 and m = 2. The coefficients are in rank order
// (index i for m = 1, pair_index for m = 2) and L is not limited by the
// pattern width.
PairRDM low_sector_pair_rdm(int L, int m, const VectorRef& a, int i, int j);
std::vector<PairRDM> low_sector_pair_rdms(int L, int m, const VectorRef& a);
PairStatistics low_sector_pair_statistics(int L, int m, const VectorRef& a, ConcurrenceFn fn = &concurrence);

/// sum_k a_k^4 of a normalized vector.
double inverse_participation_ratio(const VectorRef& a) noexcept;
double participation_ratio(const VectorRef& a) noexcept;
double participation_ratio(const DefiniteParticleState& psi) noexcept;

/// One row of a per-eigenstate report.
struct StateReport {
  std::size_t index = 0;
  std::optional<double> eigenvalue;
  double eigenvalue_shift = 0.0;  // E - S_J
  double average_concurrence = 0.0;
  double participation_ratio = 1.0;
  int promoted = 0;  // 1 promoted, 0 new, -1 ambiguous
  bool degenerate = false;
};

}  // namespace spinglass

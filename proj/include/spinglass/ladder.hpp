#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "spinglass/entanglement.hpp"
#include "spinglass/spectrum.hpp"

namespace spinglass {

/// Unnormalized total raising operator sigma+ = sum_i sigma+_i from sector m to m+1.
///
/// The image coefficient at pattern p is the sum, over set bits b of p, of the
/// source coefficient at p with bit b cleared.
Eigen::VectorXd raise(const SectorBasis& from, const SectorBasis& to, const VectorRef& a);

/// Unnormalized total lowering operator sigma- from sector m to m-1; the transpose of raise.
Eigen::VectorXd lower(const SectorBasis& from, const SectorBasis& to, const VectorRef& a);

/// sigma- as a sparse (dim_{m-1} x dim_m) matrix of ones.
Eigen::SparseMatrix<double> lowering_matrix(const SectorBasis& from, const SectorBasis& to);

/// Normalized sigma+ psi. Throws ZeroPromotion when sigma+ annihilates psi.
DefiniteParticleState promote(const DefiniteParticleState& psi, BasisPtr target = nullptr);

/// Unnormalized sigma- psi as coefficients over the (L, m-1) basis.
Eigen::VectorXd lower(const DefiniteParticleState& psi, const SectorBasis& target);

/// Uniform state of a sector (an eigenstate with eigenvalue S_J in every sector).
DefiniteParticleState all_one_state(BasisPtr basis);

enum class LadderLabel : int { Promoted = 1, New = 0, Ambiguous = -1 };

struct LadderOptions {
  /// Threshold on the sigma+ sigma- eigenvalue; exact values are 0 (new) or >= 1.
  double ladder_tol = 0.5;
  /// Half-width of the band around ladder_tol that is reported as Ambiguous.
  double ambiguity_band = 0.25;
};

struct Classification {
  std::vector<LadderLabel> labels;
  Eigen::VectorXd lowering_norms;      // ||sigma- psi|| per eigenstate
  Eigen::VectorXd ladder_eigenvalues;  // <psi| sigma+ sigma- |psi> after re-rotation
  std::size_t promoted = 0;
  std::size_t fresh = 0;
  std::size_t ambiguous = 0;
};

/// Labels each eigenstate of an m-particle sector as promoted (in the image of sigma+)
/// or new (annihilated by sigma-).
///
/// Inside every degeneracy group the eigenvectors are re-rotated in place so
/// that they also diagonalize sigma+ sigma- restricted to the group; the
/// labels are then independent of the eigensolver's arbitrary choice of basis.
/// Sector m = 0 has no lower sector and every state is New.
Classification classify(Spectrum& spectrum, const SectorBasis& basis, const LadderOptions& options = {});

struct LocalizedPromotionBound {
  double probability = 0.0;          // C(L-1, 2) / C(L, 2)
  double pair_concurrence = 0.0;     // 2 / (L - 1)
  double average_concurrence = 0.0;  // (2 / (L - 1)) (L - 2) / L
};

/// Entanglement of a promoted 1-particle basis state, the localized limit of promotion.
LocalizedPromotionBound localized_promotion_bound(int L);

}  // namespace spinglass

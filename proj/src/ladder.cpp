#include "spinglass/ladder.hpp"

#include <cmath>
#include <string>

#include "spinglass/error.hpp"

namespace spinglass {

namespace {

void check_step(const SectorBasis& from, const SectorBasis& to, int step, const VectorRef& a) {
  if (from.qubits() != to.qubits() || to.particles() != from.particles() + step) {
    throw InvalidArgument("ladder: target sector (" + std::to_string(to.qubits()) + "," +
                          std::to_string(to.particles()) + ") is not reachable from (" +
                          std::to_string(from.qubits()) + "," + std::to_string(from.particles()) + ")");
  }
  if (static_cast<std::size_t>(a.size()) != from.size()) {
    throw InvalidArgument("ladder: coefficient vector does not match the source sector");
  }
}

}  // namespace

Eigen::VectorXd raise(const SectorBasis& from, const SectorBasis& to, const VectorRef& a) {
  check_step(from, to, +1, a);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(to.size()));
  for (std::size_t k = 0; k < to.size(); ++k) {
    const Pattern p = to[k];
    double s = 0.0;
    for (Pattern bits = p; bits != 0; bits &= bits - 1) {
      s += a[static_cast<Eigen::Index>(from.rank_unchecked(p & ~(bits & (~bits + 1))))];
    }
    out[static_cast<Eigen::Index>(k)] = s;
  }
  return out;
}

Eigen::VectorXd lower(const SectorBasis& from, const SectorBasis& to, const VectorRef& a) {
  check_step(from, to, -1, a);
  const Pattern full = low_mask(from.qubits());
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(to.size()));
  for (std::size_t k = 0; k < to.size(); ++k) {
    const Pattern q = to[k];
    double s = 0.0;
    for (Pattern holes = ~q & full; holes != 0; holes &= holes - 1) {
      s += a[static_cast<Eigen::Index>(from.rank_unchecked(q | (holes & (~holes + 1))))];
    }
    out[static_cast<Eigen::Index>(k)] = s;
  }
  return out;
}

Eigen::SparseMatrix<double> lowering_matrix(const SectorBasis& from, const SectorBasis& to) {
  if (from.qubits() != to.qubits() || to.particles() + 1 != from.particles()) {
    throw InvalidArgument("lowering_matrix: sectors are not adjacent");
  }
  const Pattern full = low_mask(from.qubits());
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(to.size() * static_cast<std::size_t>(from.qubits() - to.particles()));
  for (std::size_t k = 0; k < to.size(); ++k) {
    const Pattern q = to[k];
    for (Pattern holes = ~q & full; holes != 0; holes &= holes - 1) {
      const auto col = from.rank_unchecked(q | (holes & (~holes + 1)));
      triplets.emplace_back(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(col), 1.0);
    }
  }
  Eigen::SparseMatrix<double> S(static_cast<Eigen::Index>(to.size()), static_cast<Eigen::Index>(from.size()));
  S.setFromTriplets(triplets.begin(), triplets.end());
  return S;
}

DefiniteParticleState promote(const DefiniteParticleState& psi, BasisPtr target) {
  const auto& from = psi.basis();
  if (from.particles() >= from.qubits()) {
    throw InvalidArgument("promote: sector m = L has no higher sector");
  }
  if (!target) target = build_basis(from.qubits(), from.particles() + 1);
  Eigen::VectorXd image = raise(from, *target, psi.coefficients());
  const double n = image.norm();
  if (n <= 1e-12) {
    throw ZeroPromotion("promote: sigma+ annihilates the state (top-weight input)");
  }
  image /= n;
  return {std::move(target), std::move(image)};
}

Eigen::VectorXd lower(const DefiniteParticleState& psi, const SectorBasis& target) {
  return lower(psi.basis(), target, psi.coefficients());
}

DefiniteParticleState all_one_state(BasisPtr basis) {
  if (!basis) throw InvalidArgument("all_one_state: null basis");
  const auto dim = static_cast<Eigen::Index>(basis->size());
  Eigen::VectorXd a = Eigen::VectorXd::Constant(dim, 1.0 / std::sqrt(static_cast<double>(dim)));
  return DefiniteParticleState::normalized(std::move(basis), std::move(a));
}

Classification classify(Spectrum& spectrum, const SectorBasis& basis, const LadderOptions& options) {
  const Eigen::Index n = spectrum.size();
  if (static_cast<std::size_t>(spectrum.eigenvectors.rows()) != basis.size()) {
    throw InvalidArgument("classify: spectrum does not belong to this sector");
  }
  Classification out;
  out.labels.assign(static_cast<std::size_t>(n), LadderLabel::New);
  out.lowering_norms = Eigen::VectorXd::Zero(n);
  out.ladder_eigenvalues = Eigen::VectorXd::Zero(n);
  if (basis.particles() == 0) {
    out.fresh = static_cast<std::size_t>(n);
    return out;
  }

  const SectorBasis lower_basis(basis.qubits(), basis.particles() - 1);
  const Eigen::SparseMatrix<double> S = lowering_matrix(basis, lower_basis);

  for (const auto& g : spectrum.groups) {
    auto block = spectrum.eigenvectors.middleCols(g.begin, g.size());
    if (g.degenerate()) {
      const Eigen::MatrixXd lowered = S * block;
      const Eigen::MatrixXd gram = lowered.transpose() * lowered;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(gram);
      if (solver.info() != Eigen::Success) {
        throw ConvergenceError("classify: sigma+ sigma- restriction did not diagonalize");
      }
      Eigen::MatrixXd rotated = block * solver.eigenvectors();
      canonicalize_signs(rotated);
      block = rotated;
    }
    const Eigen::MatrixXd lowered = S * block;
    for (Eigen::Index c = 0; c < g.size(); ++c) {
      const Eigen::Index k = g.begin + c;
      const double norm2 = lowered.col(c).squaredNorm();
      out.lowering_norms[k] = std::sqrt(norm2);
      out.ladder_eigenvalues[k] = norm2;
      LadderLabel label = LadderLabel::Ambiguous;
      if (norm2 >= options.ladder_tol + options.ambiguity_band) {
        label = LadderLabel::Promoted;
      } else if (norm2 <= options.ladder_tol - options.ambiguity_band) {
        label = LadderLabel::New;
      }
      out.labels[static_cast<std::size_t>(k)] = label;
    }
  }
  for (const auto label : out.labels) {
    switch (label) {
      case LadderLabel::Promoted: ++out.promoted; break;
      case LadderLabel::New: ++out.fresh; break;
      case LadderLabel::Ambiguous: ++out.ambiguous; break;
    }
  }
  return out;
}

LocalizedPromotionBound localized_promotion_bound(int L) {
  if (L < 3) throw InvalidArgument("localized_promotion_bound: L must be >= 3");
  const double l = static_cast<double>(L);
  LocalizedPromotionBound b;
  b.probability = static_cast<double>(binomial(L - 1, 2)) / static_cast<double>(binomial(L, 2));
  b.pair_concurrence = 2.0 / (l - 1.0);
  b.average_concurrence = (2.0 / (l - 1.0)) * ((l - 2.0) / l);
  return b;
}

}  // namespace spinglass

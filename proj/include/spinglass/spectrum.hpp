#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "spinglass/sector.hpp"

namespace spinglass {

/// Contiguous run [begin, end) of ascending eigenvalues chained by gaps <= degtol.
struct DegeneracyGroup {
  Eigen::Index begin = 0;
  Eigen::Index end = 0;

  Eigen::Index size() const noexcept { return end - begin; }
  bool degenerate() const noexcept { return size() > 1; }
};

/// Full eigendecomposition of a real symmetric matrix.
struct Spectrum {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // orthonormal columns
  std::vector<DegeneracyGroup> groups;
  double degtol = 0.0;

  Eigen::Index size() const noexcept { return eigenvalues.size(); }
  /// True if state k shares its eigenvalue (within degtol) with another state.
  bool is_degenerate(Eigen::Index k) const;
};

/// 1e-8 * max(1, ||H||_F).
double default_degtol(const Eigen::MatrixXd& H);

/// Maximal chains of consecutive gaps <= degtol; every index lands in exactly one group.
std::vector<DegeneracyGroup> group_degeneracies(const Eigen::VectorXd& ascending, double degtol);

/// Flips each column so its largest-magnitude entry (first one on ties) is positive.
void canonicalize_signs(Eigen::MatrixXd& vectors);

/// Dense symmetric eigensolver with deterministic sign convention.
/// Throws ConvergenceError instead of returning a partial result.
Spectrum diagonalize(const Eigen::MatrixXd& H, std::optional<double> degtol = std::nullopt);
Spectrum diagonalize(const SectorMatrix& M, std::optional<double> degtol = std::nullopt);

}  // namespace spinglass

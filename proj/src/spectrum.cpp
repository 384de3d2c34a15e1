#include "spinglass/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "spinglass/error.hpp"

namespace spinglass {

bool Spectrum::is_degenerate(Eigen::Index k) const {
  const auto it = std::upper_bound(groups.begin(), groups.end(), k,
                                   [](Eigen::Index v, const DegeneracyGroup& g) { return v < g.end; });
  return it != groups.end() && it->begin <= k && it->degenerate();
}

double default_degtol(const Eigen::MatrixXd& H) { return 1e-8 * std::max(1.0, H.norm()); }

std::vector<DegeneracyGroup> group_degeneracies(const Eigen::VectorXd& ascending, double degtol) {
  std::vector<DegeneracyGroup> groups;
  const Eigen::Index n = ascending.size();
  Eigen::Index begin = 0;
  for (Eigen::Index k = 1; k <= n; ++k) {
    if (k == n || ascending[k] - ascending[k - 1] > degtol) {
      groups.push_back({begin, k});
      begin = k;
    }
  }
  return groups;
}

void canonicalize_signs(Eigen::MatrixXd& vectors) {
  for (Eigen::Index c = 0; c < vectors.cols(); ++c) {
    Eigen::Index arg = 0;
    double best = -1.0;
    for (Eigen::Index r = 0; r < vectors.rows(); ++r) {
      const double a = std::abs(vectors(r, c));
      if (a > best) {
        best = a;
        arg = r;
      }
    }
    if (vectors.rows() > 0 && vectors(arg, c) < 0.0) vectors.col(c) *= -1.0;
  }
}

Spectrum diagonalize(const Eigen::MatrixXd& H, std::optional<double> degtol) {
  if (H.rows() != H.cols()) throw InvalidArgument("diagonalize: matrix is not square");
  if (!H.allFinite()) throw InvalidArgument("diagonalize: matrix has non-finite entries");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(H, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw ConvergenceError("diagonalize: symmetric eigensolver did not converge for dimension " +
                           std::to_string(H.rows()));
  }
  Spectrum s;
  s.eigenvalues = solver.eigenvalues();
  s.eigenvectors = solver.eigenvectors();
  canonicalize_signs(s.eigenvectors);
  s.degtol = degtol.value_or(default_degtol(H));
  s.groups = group_degeneracies(s.eigenvalues, s.degtol);
  return s;
}

Spectrum diagonalize(const SectorMatrix& M, std::optional<double> degtol) {
  return diagonalize(M.H, degtol);
}

}  // namespace spinglass

#include "spinglass/analysis.hpp"

namespace spinglass {

SectorAnalysis analyze_sector(const CouplingMatrix& J, int m, const AnalysisOptions& options) {
  auto basis = build_basis(J.L, m);
  SectorAnalysis out{assemble(J, basis), {}, {}, {}};
  out.spectrum = diagonalize(out.matrix, options.degtol);
  out.classification = classify(out.spectrum, *basis, options.ladder);

  const Eigen::Index n = out.spectrum.size();
  out.reports.resize(static_cast<std::size_t>(n));
  for (Eigen::Index k = 0; k < n; ++k) {
    const auto psi = out.spectrum.eigenvectors.col(k);
    auto& row = out.reports[static_cast<std::size_t>(k)];
    row.index = static_cast<std::size_t>(k);
    row.eigenvalue = out.spectrum.eigenvalues[k];
    row.eigenvalue_shift = out.spectrum.eigenvalues[k] - out.matrix.coupling_sum;
    row.average_concurrence = average_concurrence(*basis, psi);
    row.participation_ratio = participation_ratio(psi);
    row.promoted = static_cast<int>(out.classification.labels[static_cast<std::size_t>(k)]);
    row.degenerate = out.spectrum.is_degenerate(k);
  }
  return out;
}

PromotedStatistics promoted_two_particle_statistics(const CouplingMatrix& J) {
  auto one = build_basis(J.L, 1);
  auto two = build_basis(J.L, 2);
  const auto matrix = assemble(J, one);
  const auto spectrum = diagonalize(matrix);
  PromotedStatistics out;
  for (Eigen::Index k = 0; k < spectrum.size(); ++k) {
    const DefiniteParticleState psi(one, spectrum.eigenvectors.col(k));
    const auto promoted = promote(psi, two);
    const auto stats = pair_statistics(*two, promoted.coefficients());
    out.average_concurrence.push_back(stats.average_concurrence);
    out.entangled_fraction.push_back(stats.entangled_fraction);
    out.ipr.push_back(inverse_participation_ratio(promoted.coefficients()));
    out.eigenvalues.push_back(spectrum.eigenvalues[k]);
  }
  return out;
}

}  // namespace spinglass

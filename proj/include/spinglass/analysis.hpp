#pragma once

#include <optional>
#include <vector>

#include "spinglass/couplings.hpp"
#include "spinglass/entanglement.hpp"
#include "spinglass/ladder.hpp"
#include "spinglass/spectrum.hpp"

namespace spinglass {

struct AnalysisOptions {
  std::optional<double> degtol;
  LadderOptions ladder;
};

/// Everything computed for one sector of one disorder sample.
struct SectorAnalysis {
  SectorMatrix matrix;
  Spectrum spectrum;  // eigenvectors re-rotated inside degeneracy groups
  Classification classification;
  std::vector<StateReport> reports;
};

/// Assemble, diagonalize, classify and measure every eigenstate of sector m.
SectorAnalysis analyze_sector(const CouplingMatrix& J, int m, const AnalysisOptions& options = {});

/// Concurrence statistics of the 2-particle states promoted from every 1-particle eigenstate.
struct PromotedStatistics {
  std::vector<double> average_concurrence;  // one per promoted state
  std::vector<double> entangled_fraction;
  std::vector<double> ipr;
  std::vector<double> eigenvalues;
};

PromotedStatistics promoted_two_particle_statistics(const CouplingMatrix& J);

}  // namespace spinglass

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

namespace spinglass {

enum class ModelFamily { InfiniteRange, NearestNeighbour, PowerLaw };

/// Disorder model. `sigma` is only meaningful for PowerLaw.
struct Model {
  ModelFamily family = ModelFamily::InfiniteRange;
  double sigma = 0.0;

  static Model infinite_range() { return {ModelFamily::InfiniteRange, 0.0}; }
  static Model nearest_neighbour() { return {ModelFamily::NearestNeighbour, 0.0}; }
  /// sigma = +inf selects the strict nearest-neighbour model.
  static Model power_law(double sigma);

  std::string name() const;
  bool operator==(const Model&) const = default;
};

/// Symmetric L x L coupling matrix with zero diagonal.
struct CouplingMatrix {
  int L = 0;
  Eigen::MatrixXd J;
  Model model;
  std::uint64_t seed = 0;
};

/// Chord length between qubits i and j on a ring of L sites (0-based indices).
double chord_distance(int L, int i, int j);

/// Draws one disorder realization. Identical (model, L, seed) give a bit-identical matrix.
///
/// Entry (i, j), i < j, is the normal variate with counter i * 128 + j of the
/// stream keyed by `seed`, scaled by r_ij^(-sigma/2) for the power-law model.
CouplingMatrix sample_couplings(const Model& model, int L, std::uint64_t seed);

/// Sum of all couplings J_ij over i < j (the all-one eigenvalue).
double coupling_sum(const CouplingMatrix& J);

/// Per-sample seeds for a disorder sweep.
struct DisorderPlan {
  Model model;
  std::vector<int> sizes;
  int samples = 1;
  std::uint64_t master_seed = 0;

  std::uint64_t sample_seed(std::uint64_t sample_index) const;
};

/// Header describing a coupling matrix: model, sigma, L, seed.
nlohmann::json couplings_header(const CouplingMatrix& J);

/// Writes `i,j,J_ij` rows (1-based qubits, i < j, every pair).
void write_couplings_csv(std::ostream& os, const CouplingMatrix& J);

/// Reads the format written by write_couplings_csv; header lines start with '#'.
CouplingMatrix read_couplings_csv(std::istream& is, const Model& model, std::uint64_t seed);

}  // namespace spinglass

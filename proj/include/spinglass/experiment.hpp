#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "spinglass/analysis.hpp"
#include "spinglass/couplings.hpp"
#include "spinglass/ensembles.hpp"
#include "spinglass/fitting.hpp"

namespace spinglass {

std::string version();

enum class ScalingTarget { Eigenstates, Random, RandomPromoted };

std::string to_string(ScalingTarget target);

/// Settings shared by every batch command; echoed verbatim into output headers.
struct ExperimentConfig {
  Model model = Model::infinite_range();
  std::vector<int> sizes{8};
  int m = 2;
  int samples = 1;
  std::uint64_t seed = 1;
  PairPolicy pairs = PairPolicy::AllPairs;
  std::filesystem::path out = ".";
  AnalysisOptions analysis;
  std::vector<double> sigmas;  // phase diagram only; +inf = nearest neighbour
  ScalingTarget target = ScalingTarget::RandomPromoted;
  int workers = 1;  // never part of the echo: outputs do not depend on it

  /// Throws InvalidArgument describing the first invalid field.
  void validate() const;
  nlohmann::json to_json() const;
  DisorderPlan plan() const;
};

/// Text prepended to every CSV: version, config echo and seed.
std::string output_header(const ExperimentConfig& config);

struct SpectrumRunSummary {
  std::vector<std::filesystem::path> files;
  std::vector<std::vector<StateReport>> samples;  // [sample][state]
};

/// `index,eigenvalue,E_minus_SJ,avg_concurrence,PR,promoted,degenerate` rows.
void write_state_report_header(std::ostream& os);
void write_state_report_row(std::ostream& os, const StateReport& row);

/// One CSV per (L, sample) with a row per eigenstate of sector m.
SpectrumRunSummary cmd_spectrum_report(const ExperimentConfig& config);

struct PhasePoint {
  double sigma = 0.0;
  std::size_t promoted_states = 0;
  std::size_t new_states = 0;
  std::size_t rows = 0;
  double promoted_mean_concurrence = 0.0;
  double new_mean_concurrence = 0.0;
  double ratio = 0.0;  // promoted mean / new mean
  std::vector<std::size_t> promoted_per_sample;
};

struct PhaseDiagramSummary {
  std::vector<std::filesystem::path> files;
  std::vector<PhasePoint> points;
};

/// Pooled (average concurrence, PR, promoted) scatter over samples for each sigma.
PhaseDiagramSummary cmd_phase_diagram(const ExperimentConfig& config);

struct ScalingCurvePoint {
  int L = 0;
  MCEstimate probability;
  MCEstimate concurrence;
  MCEstimate ipr;
};

struct ScalingSummary {
  std::vector<std::filesystem::path> files;
  std::vector<ScalingCurvePoint> curve;
  nlohmann::json fits;
};

/// <C>(L) and P(C>0)(L) with standard errors, reference curves and fits.
ScalingSummary cmd_scaling(const ExperimentConfig& config);

/// Writes the coupling matrix of every (L, sample) as CSV.
std::vector<std::filesystem::path> cmd_couplings(const ExperimentConfig& config);

struct VerifyCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct VerifyOptions {
  ConcurrenceFn concurrence = &spinglass::concurrence;
  std::uint64_t seed = 1;
};

/// Small-L invariant and oracle checks.
std::vector<VerifyCheck> cmd_verify(const VerifyOptions& options = {});

/// `PASS name: detail` / `FAIL name: detail` lines.
std::string format_verify_report(const std::vector<VerifyCheck>& checks);

}  // namespace spinglass

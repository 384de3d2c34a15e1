#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "spinglass/entanglement.hpp"

namespace spinglass {

enum class EnsembleKind { Random1p, Random2p, RandomPromoted2p };
enum class PairPolicy { SinglePair, AllPairs };
enum class Quantity { ProbPositiveC, MeanC, MeanIPR };

std::string to_string(EnsembleKind kind);
std::string to_string(PairPolicy policy);
std::string to_string(Quantity quantity);

/// Random real definite-particle states: i.i.d. standard normal coefficients, normalized.
struct EnsembleSpec {
  EnsembleKind kind = EnsembleKind::RandomPromoted2p;
  int L = 8;
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  PairPolicy pairs = PairPolicy::SinglePair;
  /// Project the 1-particle draw onto sum_i a_i = 0 before normalizing or promoting.
  bool zero_sum = false;
};

struct MCEstimate {
  Quantity quantity = Quantity::MeanC;
  double mean = 0.0;
  double standard_error = 0.0;  // sample standard deviation / sqrt(n)
  std::size_t samples = 0;
};

/// Mean and standard error of per-sample values, summed in a fixed order.
MCEstimate summarize(Quantity quantity, std::span<const double> values);

/// Draws ensemble members; sample `index` depends only on (spec.seed, index).
///
/// Coefficients are produced in rank order (pair_index for two particles), so
/// any L >= 3 works. The DefiniteParticleState views need L <= kMaxQubits.
class EnsembleSampler {
 public:
  explicit EnsembleSampler(const EnsembleSpec& spec);

  const EnsembleSpec& spec() const noexcept { return spec_; }
  int particles() const noexcept { return spec_.kind == EnsembleKind::Random1p ? 1 : 2; }

  Eigen::VectorXd coefficients(std::size_t index) const;
  /// The normalized (and optionally zero-sum) 1-particle draw behind sample `index`.
  Eigen::VectorXd one_particle_coefficients(std::size_t index) const;

  DefiniteParticleState sample(std::size_t index) const;
  DefiniteParticleState one_particle_draw(std::size_t index) const;

 private:
  EnsembleSpec spec_;
  BasisPtr one_;
  BasisPtr two_;
};

/// Normalized sigma+ image of a 1-particle vector, in pair_index order.
Eigen::VectorXd promote_one_particle(const VectorRef& a);

DefiniteParticleState sample_state(const EnsembleSpec& spec, std::size_t index);

/// Per-sample observables under a pair policy.
struct SampleObservables {
  double entangled = 0.0;    // indicator of C > 0 (single pair) or share of pairs with C > 0
  double concurrence = 0.0;  // pair (1,2) concurrence or the all-pairs average
  double ipr = 0.0;
};

SampleObservables observe(const DefiniteParticleState& psi, PairPolicy policy);
SampleObservables observe(int L, int particles, const VectorRef& a, PairPolicy policy);

struct EnsembleEstimates {
  MCEstimate probability;  // P(C > 0)
  MCEstimate concurrence;  // <C>
  MCEstimate ipr;          // <IPR>
};

EnsembleEstimates estimate_all(const EnsembleSpec& spec, int workers);
EnsembleEstimates estimate_all(const EnsembleSpec& spec);
MCEstimate estimate(const EnsembleSpec& spec, Quantity quantity);

/// Reference values for random and promoted states.
struct ReferenceValues {
  int L = 0;
  double asymptotic_probability = 0.0;  // erf^2(1/sqrt2) + erfc^2(1/sqrt2)
  double promoted_concurrence = 0.0;    // 0.465 / L
  double random2p_concurrence = 0.0;    // 16 / (L^2 pi^{3/2})
  double random2p_z_squared = 0.0;      // 4 / L^3
  double random1p_ipr = 0.0;            // 3 / L
  double promoted2p_ipr = 0.0;          // 6 / L^2
  double all_one_1p_concurrence = 0.0;  // 2 / L
  double all_one_2p_concurrence = 0.0;  // (2 / C(L,2)) (L - 2 - sqrt((L^2 - 5L + 6) / 2))
  double localized_bound = 0.0;         // (2 / (L - 1)) (L - 2) / L
};

/// L-independent constant of the random-promoted average concurrence.
inline constexpr double kPromotedConcurrenceConstant = 0.465;

ReferenceValues closed_forms(int L);

/// Promoted IPR predicted from the 1-particle IPR when sum_i a_i = 0.
double promoted_ipr_from_one_particle(double ipr_one, int L);

/// Leading-order RDM elements of pair (1, 2) in a zero-sum promoted state,
/// labelled as in PairRDM: v is the both-up population (a_1 + a_2)^2 / L and
/// y the both-down population, which tends to 1.
struct LeadingOrderPair {
  double v = 0.0;
  double y = 1.0;
  double z = 0.0;
};
LeadingOrderPair promoted_pair_leading_order(double a1, double a2, int L);

/// `L,quantity,estimate,stderr,n_samples,kind,pair_policy` rows.
void write_estimate_header(std::ostream& os);
void write_estimate_row(std::ostream& os, int L, const MCEstimate& e, const std::string& kind,
                        const std::string& pair_policy);

}  // namespace spinglass

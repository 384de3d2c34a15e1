#include "spinglass/ensembles.hpp"

#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "spinglass/error.hpp"
#include "spinglass/format.hpp"
#include "spinglass/ladder.hpp"
#include "spinglass/parallel.hpp"
#include "spinglass/rng.hpp"

namespace spinglass {

std::string to_string(EnsembleKind kind) {
  switch (kind) {
    case EnsembleKind::Random1p: return "random-1p";
    case EnsembleKind::Random2p: return "random-2p";
    case EnsembleKind::RandomPromoted2p: return "random-promoted-2p";
  }
  return "unknown";
}

std::string to_string(PairPolicy policy) {
  return policy == PairPolicy::SinglePair ? "single" : "all";
}

std::string to_string(Quantity quantity) {
  switch (quantity) {
    case Quantity::ProbPositiveC: return "P(C>0)";
    case Quantity::MeanC: return "mean_C";
    case Quantity::MeanIPR: return "mean_IPR";
  }
  return "unknown";
}

MCEstimate summarize(Quantity quantity, std::span<const double> values) {
  MCEstimate e{quantity, 0.0, 0.0, values.size()};
  if (values.empty()) return e;
  const auto n = static_cast<double>(values.size());
  e.mean = pairwise_sum(values) / n;
  if (values.size() > 1) {
    std::vector<double> dev(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) dev[i] = (values[i] - e.mean) * (values[i] - e.mean);
    e.standard_error = std::sqrt(pairwise_sum(dev) / (n - 1.0) / n);
  }
  return e;
}

EnsembleSampler::EnsembleSampler(const EnsembleSpec& spec) : spec_(spec) {
  if (spec.L < 3) throw InvalidArgument("ensemble: L must be >= 3");
  if (spec.L <= kMaxQubits) {
    one_ = build_basis(spec.L, 1);
    if (spec.kind != EnsembleKind::Random1p) two_ = build_basis(spec.L, 2);
  }
}

Eigen::VectorXd EnsembleSampler::one_particle_coefficients(std::size_t index) const {
  const NormalStream normal(derive_seed(spec_.seed, index));
  Eigen::VectorXd a(spec_.L);
  for (Eigen::Index c = 0; c < a.size(); ++c) a[c] = normal[static_cast<std::uint64_t>(c)];
  if (spec_.zero_sum) a.array() -= a.mean();
  const double n = a.norm();
  if (n == 0.0) throw InvalidArgument("ensemble: zero 1-particle draw");
  return a / n;
}

Eigen::VectorXd promote_one_particle(const VectorRef& a) {
  const auto L = static_cast<int>(a.size());
  Eigen::VectorXd b(static_cast<Eigen::Index>(L) * (L - 1) / 2);
  for (int j = 1; j < L; ++j) {
    for (int i = 0; i < j; ++i) b[static_cast<Eigen::Index>(pair_index(i, j))] = a[i] + a[j];
  }
  const double n = b.norm();
  if (n <= 1e-12) throw ZeroPromotion("promote: sigma+ annihilates the state (top-weight input)");
  return b / n;
}

Eigen::VectorXd EnsembleSampler::coefficients(std::size_t index) const {
  switch (spec_.kind) {
    case EnsembleKind::Random1p:
      return one_particle_coefficients(index);
    case EnsembleKind::RandomPromoted2p:
      return promote_one_particle(one_particle_coefficients(index));
    case EnsembleKind::Random2p: {
      const NormalStream normal(derive_seed(spec_.seed, index));
      Eigen::VectorXd a(static_cast<Eigen::Index>(spec_.L) * (spec_.L - 1) / 2);
      for (Eigen::Index c = 0; c < a.size(); ++c) a[c] = normal[static_cast<std::uint64_t>(c)];
      return a / a.norm();
    }
  }
  throw InvalidArgument("ensemble: unknown kind");
}

DefiniteParticleState EnsembleSampler::one_particle_draw(std::size_t index) const {
  if (!one_) throw InvalidArgument("ensemble: state views need L <= " + std::to_string(kMaxQubits));
  return DefiniteParticleState::normalized(one_, one_particle_coefficients(index));
}

DefiniteParticleState EnsembleSampler::sample(std::size_t index) const {
  if (!one_) throw InvalidArgument("ensemble: state views need L <= " + std::to_string(kMaxQubits));
  return DefiniteParticleState::normalized(particles() == 1 ? one_ : two_, coefficients(index));
}

DefiniteParticleState sample_state(const EnsembleSpec& spec, std::size_t index) {
  return EnsembleSampler(spec).sample(index);
}

SampleObservables observe(const DefiniteParticleState& psi, PairPolicy policy) {
  SampleObservables o;
  o.ipr = inverse_participation_ratio(psi.coefficients());
  if (policy == PairPolicy::SinglePair) {
    o.concurrence = concurrence(pair_rdm(psi, 0, 1));
    o.entangled = o.concurrence > 0.0 ? 1.0 : 0.0;
  } else {
    const auto stats = pair_statistics(psi.basis(), psi.coefficients());
    o.concurrence = stats.average_concurrence;
    o.entangled = stats.entangled_fraction;
  }
  return o;
}

SampleObservables observe(int L, int particles, const VectorRef& a, PairPolicy policy) {
  SampleObservables o;
  o.ipr = inverse_participation_ratio(a);
  if (policy == PairPolicy::SinglePair) {
    o.concurrence = concurrence(low_sector_pair_rdm(L, particles, a, 0, 1));
    o.entangled = o.concurrence > 0.0 ? 1.0 : 0.0;
  } else {
    const auto stats = low_sector_pair_statistics(L, particles, a);
    o.concurrence = stats.average_concurrence;
    o.entangled = stats.entangled_fraction;
  }
  return o;
}

EnsembleEstimates estimate_all(const EnsembleSpec& spec, int workers) {
  if (spec.samples < 100) throw InvalidArgument("ensemble: at least 100 samples are required");
  const EnsembleSampler sampler(spec);
  std::vector<double> entangled(spec.samples), conc(spec.samples), ipr(spec.samples);
  parallel_for(
      spec.samples,
      [&](std::size_t s) {
        const auto o = observe(spec.L, sampler.particles(), sampler.coefficients(s), spec.pairs);
        entangled[s] = o.entangled;
        conc[s] = o.concurrence;
        ipr[s] = o.ipr;
      },
      workers);
  return {summarize(Quantity::ProbPositiveC, entangled), summarize(Quantity::MeanC, conc),
          summarize(Quantity::MeanIPR, ipr)};
}

EnsembleEstimates estimate_all(const EnsembleSpec& spec) { return estimate_all(spec, worker_count()); }

MCEstimate estimate(const EnsembleSpec& spec, Quantity quantity) {
  const auto all = estimate_all(spec);
  switch (quantity) {
    case Quantity::ProbPositiveC: return all.probability;
    case Quantity::MeanC: return all.concurrence;
    case Quantity::MeanIPR: return all.ipr;
  }
  return all.concurrence;
}

ReferenceValues closed_forms(int L) {
  if (L < 3) throw InvalidArgument("closed_forms: L must be >= 3");
  const double l = static_cast<double>(L);
  const double half = 1.0 / std::numbers::sqrt2;
  ReferenceValues r;
  r.L = L;
  r.asymptotic_probability = std::pow(std::erf(half), 2) + std::pow(std::erfc(half), 2);
  r.promoted_concurrence = kPromotedConcurrenceConstant / l;
  r.random2p_concurrence = 16.0 / (l * l * std::pow(std::numbers::pi, 1.5));
  r.random2p_z_squared = 4.0 / (l * l * l);
  r.random1p_ipr = 3.0 / l;
  r.promoted2p_ipr = 6.0 / (l * l);
  r.all_one_1p_concurrence = 2.0 / l;
  r.all_one_2p_concurrence = 2.0 / static_cast<double>(binomial(L, 2)) *
                             (l - 2.0 - std::sqrt((l * l - 5.0 * l + 6.0) / 2.0));
  r.localized_bound = localized_promotion_bound(L).average_concurrence;
  return r;
}

double promoted_ipr_from_one_particle(double ipr_one, int L) {
  if (L < 3) throw InvalidArgument("promoted_ipr_from_one_particle: L must be >= 3");
  const double l = static_cast<double>(L);
  return ((l - 8.0) * ipr_one + 3.0) / ((l - 2.0) * (l - 2.0));
}

LeadingOrderPair promoted_pair_leading_order(double a1, double a2, int L) {
  const double l = static_cast<double>(L);
  return {(a1 + a2) * (a1 + a2) / l, 1.0, (1.0 + l * a1 * a2) / l};
}

void write_estimate_header(std::ostream& os) { os << "L,quantity,estimate,stderr,n_samples,kind,pair_policy\n"; }

void write_estimate_row(std::ostream& os, int L, const MCEstimate& e, const std::string& kind,
                        const std::string& pair_policy) {
  os << L << ',' << to_string(e.quantity) << ',' << format_double(e.mean) << ',' << format_double(e.standard_error)
     << ',' << e.samples << ',' << kind << ',' << pair_policy << '\n';
}

}  // namespace spinglass

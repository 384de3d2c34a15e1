#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "spinglass/ensembles.hpp"
#include "spinglass/error.hpp"
#include "spinglass/ladder.hpp"

using namespace spinglass;

namespace {

double phi(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2 * std::numbers::pi); }

// Composite Simpson rule for the standard normal density on [a, b].
double normal_mass(double a, double b, int n = 2000) {
  const double h = (b - a) / n;
  double s = phi(a) + phi(b);
  for (int k = 1; k < n; ++k) s += (k % 2 ? 4 : 2) * phi(a + k * h);
  return s * h / 3;
}

// L <C> of a zero-sum promoted state at leading order: with x_i = sqrt(L) a_i,
// C = (2 / L)(|1 + x1 x2| - |x1 + x2|)_+ and v = 1. Midpoint rule on [-8, 8]^2.
double promoted_concurrence_constant(int n) {
  const double lo = -8.0, h = 16.0 / n;
  double sum = 0.0;
  for (int a = 0; a < n; ++a) {
    const double x1 = lo + (a + 0.5) * h;
    const double w1 = phi(x1);
    for (int b = 0; b < n; ++b) {
      const double x2 = lo + (b + 0.5) * h;
      const double c = std::abs(1 + x1 * x2) - std::abs(x1 + x2);
      if (c > 0) sum += 2 * c * w1 * phi(x2);
    }
  }
  return sum * h * h;
}

EnsembleSpec spec_of(EnsembleKind kind, int L, std::size_t n, std::uint64_t seed,
                     PairPolicy pairs = PairPolicy::SinglePair) {
  EnsembleSpec s;
  s.kind = kind;
  s.L = L;
  s.samples = n;
  s.seed = seed;
  s.pairs = pairs;
  return s;
}

}  // namespace

TEST_CASE("names") {
  CHECK(to_string(EnsembleKind::Random1p) == "random-1p");
  CHECK(to_string(EnsembleKind::Random2p) == "random-2p");
  CHECK(to_string(EnsembleKind::RandomPromoted2p) == "random-promoted-2p");
  CHECK(to_string(PairPolicy::SinglePair) == "single");
  CHECK(to_string(PairPolicy::AllPairs) == "all");
  CHECK(to_string(Quantity::ProbPositiveC) == "P(C>0)");
}

TEST_CASE("summarize uses the sample standard deviation over sqrt(n)") {
  const std::vector<double> v{1, 2, 3, 4};
  const auto e = summarize(Quantity::MeanC, v);
  CHECK(e.mean == 2.5);
  CHECK(e.standard_error == doctest::Approx(std::sqrt(5.0 / 3.0) / 2.0));
  CHECK(e.samples == 4);
  CHECK(summarize(Quantity::MeanC, std::vector<double>{7}).standard_error == 0.0);
}

TEST_CASE("samples are normalized and deterministic") {
  for (const auto kind : {EnsembleKind::Random1p, EnsembleKind::Random2p, EnsembleKind::RandomPromoted2p}) {
    const auto spec = spec_of(kind, 9, 100, 5);
    const EnsembleSampler sampler(spec);
    for (std::size_t k = 0; k < 50; ++k) {
      const auto a = sampler.sample(k);
      CHECK(a.coefficients().norm() == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(a.coefficients() == sample_state(spec, k).coefficients());
    }
    CHECK(sampler.sample(3).coefficients() != sampler.sample(4).coefficients());
  }
}

TEST_CASE("promoted samples are promotions of the one-particle draw") {
  auto spec = spec_of(EnsembleKind::RandomPromoted2p, 11, 100, 8);
  const EnsembleSampler sampler(spec);
  for (std::size_t k = 0; k < 10; ++k) {
    CHECK((sampler.sample(k).coefficients() - promote(sampler.one_particle_draw(k)).coefficients())
              .cwiseAbs()
              .maxCoeff() <= 1e-15);
    CHECK(std::abs(sampler.one_particle_draw(k).coefficients().sum()) > 1e-6);
  }
  spec.zero_sum = true;
  const EnsembleSampler zero(spec);
  for (std::size_t k = 0; k < 10; ++k) CHECK(std::abs(zero.one_particle_draw(k).coefficients().sum()) <= 1e-14);
}

TEST_CASE("raw coefficients, state views and both observation paths agree") {
  for (const auto kind : {EnsembleKind::Random1p, EnsembleKind::Random2p, EnsembleKind::RandomPromoted2p}) {
    for (const auto pairs : {PairPolicy::SinglePair, PairPolicy::AllPairs}) {
      const EnsembleSampler sampler(spec_of(kind, 13, 100, 31, pairs));
      for (std::size_t k = 0; k < 20; ++k) {
        const auto psi = sampler.sample(k);
        const Eigen::VectorXd raw = sampler.coefficients(k);
        CHECK((psi.coefficients() - raw).cwiseAbs().maxCoeff() <= 1e-15);
        const auto a = observe(psi, pairs);
        const auto b = observe(13, sampler.particles(), raw, pairs);
        CHECK(a.concurrence == doctest::Approx(b.concurrence).epsilon(1e-12));
        CHECK(a.entangled == doctest::Approx(b.entangled).epsilon(1e-12));
        CHECK(a.ipr == doctest::Approx(b.ipr).epsilon(1e-14));
      }
    }
  }
}

TEST_CASE("ensembles beyond the pattern width") {
  const auto spec = spec_of(EnsembleKind::RandomPromoted2p, 200, 100, 37);
  const EnsembleSampler sampler(spec);
  CHECK(sampler.coefficients(0).size() == 200 * 199 / 2);
  CHECK(sampler.coefficients(0).norm() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(sampler.sample(0), InvalidArgument);
  const auto e = estimate_all(spec, 1);
  CHECK(e.probability.mean > 0.4);
  CHECK(e.concurrence.mean > 0.0);
}

TEST_CASE("every random one-particle state entangles the first pair") {
  const auto spec = spec_of(EnsembleKind::Random1p, 20, 500, 3);
  const EnsembleSampler sampler(spec);
  for (std::size_t k = 0; k < spec.samples; ++k) {
    const auto psi = sampler.sample(k);
    const auto r = pair_rdm(psi, 0, 1);
    CHECK(r.z == doctest::Approx(psi[0] * psi[1]).epsilon(1e-15));
    CHECK(concurrence(r) > 0.0);
  }
  CHECK(estimate(spec, Quantity::ProbPositiveC).mean == 1.0);
}

TEST_CASE("mean one-particle IPR equals 3/(L+2) at finite L") {
  // For i.i.d. Gaussians, E[sum x^4 / (sum x^2)^2] = 3 / (L + 2) exactly.
  for (const int L : {10, 40}) {
    const auto e = estimate(spec_of(EnsembleKind::Random1p, L, 20000, 17), Quantity::MeanIPR);
    CHECK(std::abs(e.mean - 3.0 / (L + 2)) <= 3 * e.standard_error);
  }
}

TEST_CASE("single-pair and all-pairs estimators agree") {
  for (const auto kind : {EnsembleKind::RandomPromoted2p, EnsembleKind::Random2p}) {
    for (const int L : {8, 16, 30}) {
      const auto single = estimate_all(spec_of(kind, L, 3000, 19, PairPolicy::SinglePair), 1);
      const auto all = estimate_all(spec_of(kind, L, 3000, 23, PairPolicy::AllPairs), 1);
      const double se = std::hypot(single.concurrence.standard_error, all.concurrence.standard_error);
      CHECK(std::abs(single.concurrence.mean - all.concurrence.mean) <= 3 * se);
      const double sp = std::hypot(single.probability.standard_error, all.probability.standard_error);
      CHECK(std::abs(single.probability.mean - all.probability.mean) <= 3 * sp);
    }
  }
}

TEST_CASE("estimates are bit-identical across worker counts") {
  const auto spec = spec_of(EnsembleKind::RandomPromoted2p, 14, 300, 29, PairPolicy::AllPairs);
  const auto a = estimate_all(spec, 1);
  const auto b = estimate_all(spec, 4);
  CHECK(a.probability.mean == b.probability.mean);
  CHECK(a.concurrence.mean == b.concurrence.mean);
  CHECK(a.concurrence.standard_error == b.concurrence.standard_error);
  CHECK(a.ipr.mean == b.ipr.mean);
  CHECK_THROWS_AS(estimate_all(spec_of(EnsembleKind::Random1p, 5, 99, 1), 1), InvalidArgument);
}

TEST_CASE("closed forms") {
  const auto r = closed_forms(25);
  const double p = normal_mass(-1, 1);
  CHECK(r.asymptotic_probability == doctest::Approx(p * p + (1 - p) * (1 - p)).epsilon(1e-9));
  CHECK(std::abs(r.asymptotic_probability - 0.566751) < 5e-7);
  CHECK(r.promoted_concurrence == doctest::Approx(0.465 / 25));
  CHECK(r.random2p_concurrence == doctest::Approx(16.0 / (625 * std::pow(std::numbers::pi, 1.5))));
  CHECK(std::abs(r.random2p_concurrence - 0.0046) < 1e-4);
  CHECK(r.random2p_z_squared == doctest::Approx(4.0 / 15625));
  CHECK(r.random1p_ipr == doctest::Approx(3.0 / 25));
  CHECK(r.promoted2p_ipr == doctest::Approx(6.0 / 625));
  CHECK(r.all_one_1p_concurrence == doctest::Approx(2.0 / 25));
  CHECK(r.all_one_2p_concurrence == doctest::Approx(2.0 / 300 * (23 - std::sqrt((625 - 125 + 6) / 2.0))));
  CHECK(r.localized_bound == doctest::Approx(2.0 / 24 * 23.0 / 25));
  CHECK_THROWS_AS(closed_forms(2), InvalidArgument);
}

TEST_CASE("the 0.465 constant from the two-dimensional integral") {
  const double c = promoted_concurrence_constant(3000);
  CHECK(std::abs(c - kPromotedConcurrenceConstant) < 5e-4);
  CHECK(c == doctest::Approx(0.46530).epsilon(1e-4));
}

TEST_CASE("promoted IPR helper") {
  CHECK(promoted_ipr_from_one_particle(0.37, 8) == doctest::Approx(1.0 / 12));
  CHECK(promoted_ipr_from_one_particle(0.1, 12) == doctest::Approx((4 * 0.1 + 3) / 100));
}

TEST_CASE("leading-order pair elements converge on zero-sum promoted states") {
  std::vector<double> worst;
  for (const int L : {50, 200, 800}) {
    auto spec = spec_of(EnsembleKind::RandomPromoted2p, L, 100, 31);
    spec.zero_sum = true;
    const EnsembleSampler sampler(spec);
    double err = 0.0;
    for (std::size_t k = 0; k < 20; ++k) {
      const Eigen::VectorXd one = sampler.one_particle_coefficients(k);
      const auto exact = low_sector_pair_rdm(L, 2, sampler.coefficients(k), 0, 1);
      const auto lead = promoted_pair_leading_order(one[0], one[1], L);
      // errors relative to the natural scales z ~ 1/L, v ~ 1/L^2, y ~ 1
      const double l = L;
      err = std::max(err, std::abs(exact.z - lead.z) * l);
      err = std::max(err, std::abs(exact.v - lead.v) * l * l);
      err = std::max(err, std::abs(exact.y - lead.y));
    }
    worst.push_back(err);
  }
  CHECK(worst[1] < worst[0]);
  CHECK(worst[2] < worst[1]);
  CHECK(worst[2] < 0.05);
}

TEST_CASE("estimate CSV rows") {
  std::ostringstream os;
  write_estimate_header(os);
  write_estimate_row(os, 25, MCEstimate{Quantity::MeanC, 0.5, 0.25, 100}, "random-2p", "single");
  CHECK(os.str() == "L,quantity,estimate,stderr,n_samples,kind,pair_policy\n25,mean_C,0.5,0.25,100,random-2p,single\n");
}

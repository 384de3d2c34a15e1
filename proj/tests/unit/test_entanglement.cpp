#include <doctest.h>

#include <cmath>

#include "spinglass/entanglement.hpp"
#include "spinglass/error.hpp"
#include "spinglass/ladder.hpp"
#include "spinglass/oracles.hpp"
#include "spinglass/rng.hpp"

using namespace spinglass;

namespace {

Eigen::VectorXd random_unit(std::size_t n, std::uint64_t key) {
  const NormalStream normal(key);
  Eigen::VectorXd v(static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k) v[Eigen::Index(k)] = normal[k];
  return v.normalized();
}

Eigen::VectorXd uniform(std::size_t n) {
  return Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n), 1.0 / std::sqrt(double(n)));
}

double all_one_two_particle(int L) {
  const double l = L;
  return 2.0 / (l * (l - 1) / 2) * (l - 2 - std::sqrt((l * l - 5 * l + 6) / 2));
}

}  // namespace

TEST_CASE("all-one one-particle state") {
  for (const int L : {3, 8, 25}) {
    const auto basis = build_basis(L, 1);
    const auto a = uniform(basis->size());
    const auto r = pair_rdm(*basis, a, 0, L - 1);
    CHECK(r.z == doctest::Approx(1.0 / L).epsilon(1e-14));
    CHECK(r.v == 0.0);
    CHECK(r.y == doctest::Approx((L - 2.0) / L).epsilon(1e-14));
    CHECK(concurrence(r) == doctest::Approx(2.0 / L).epsilon(1e-14));
    CHECK(average_concurrence(*basis, a) == doctest::Approx(2.0 / L).epsilon(1e-14));
  }
}

TEST_CASE("basis states are unentangled and fully localized") {
  const auto basis = build_basis(6, 2);
  for (std::size_t k = 0; k < basis->size(); ++k) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(Eigen::Index(basis->size()));
    e[Eigen::Index(k)] = 1.0;
    for (const auto& r : all_pair_rdms(*basis, e)) {
      CHECK(r.z == 0.0);
      CHECK(concurrence(r) == 0.0);
    }
    CHECK(average_concurrence(*basis, e) == 0.0);
    CHECK(participation_ratio(e) == 1.0);
  }
  CHECK(participation_ratio(uniform(15)) == doctest::Approx(15.0));
}

TEST_CASE("concurrence formula") {
  PairRDM r;
  r.v = 0.25;
  r.y = 0.25;
  r.z = 0.25;
  r.w = r.x = 0.25;
  CHECK(concurrence(r) == 0.0);
  r.z = -0.25;
  r.v = 0.0;
  r.w = r.x = 0.375;
  CHECK(concurrence(r) == doctest::Approx(0.5));
}

TEST_CASE("pair RDM matches the brute-force partial trace (L=4, m=2 and others)") {
  std::uint64_t draw = 0;
  for (const auto [L, m] : {std::pair{4, 2}, std::pair{5, 1}, std::pair{6, 3}, std::pair{7, 2}}) {
    const auto basis = build_basis(L, m);
    for (int rep = 0; rep < 5; ++rep) {
      const auto a = random_unit(basis->size(), derive_seed(51, draw++));
      const auto full = oracle::embed(*basis, a);
      for (int i = 0; i < L; ++i) {
        for (int j = 0; j < L; ++j) {
          if (i == j) continue;
          const auto r = pair_rdm(*basis, a, i, j);
          CHECK((r.matrix() - oracle::partial_trace_pair(full, L, i, j)).cwiseAbs().maxCoeff() <= 1e-14);
        }
      }
    }
  }
}

TEST_CASE("RDM trace and positivity invariants; one-pass kernel equals per-pair kernel") {
  for (std::uint64_t t = 0; t < 30; ++t) {
    const int L = 5 + int(t % 5);
    const int m = 1 + int(t % 3);
    const auto basis = build_basis(L, m);
    const auto a = random_unit(basis->size(), derive_seed(52, t));
    const auto all = all_pair_rdms(*basis, a);
    REQUIRE(all.size() == std::size_t(L * (L - 1) / 2));
    std::size_t p = 0;
    for (int i = 0; i < L; ++i) {
      for (int j = i + 1; j < L; ++j, ++p) {
        const auto& r = all[p];
        CHECK(r.i == i);
        CHECK(r.j == j);
        CHECK(r.v + r.w + r.x + r.y == doctest::Approx(1.0).epsilon(1e-10));
        CHECK(r.z * r.z <= r.w * r.x + 1e-12);
        CHECK(r.v >= 0.0);
        CHECK(r.y >= 0.0);
        const auto single = pair_rdm(*basis, a, i, j);
        CHECK(std::abs(single.v - r.v) <= 1e-14);
        CHECK(std::abs(single.w - r.w) <= 1e-14);
        CHECK(std::abs(single.x - r.x) <= 1e-14);
        CHECK(std::abs(single.y - r.y) <= 1e-14);
        CHECK(std::abs(single.z - r.z) <= 1e-14);
        const double c = concurrence(r);
        CHECK(c >= 0.0);
        CHECK(c <= 1.0);
      }
    }
  }
}

TEST_CASE("basis-free low-sector kernels equal the basis kernels") {
  for (const int m : {1, 2}) {
    for (const int L : {3, 5, 12, 40}) {
      const auto basis = build_basis(L, m);
      for (std::uint64_t key = 0; key < 5; ++key) {
        const auto a = random_unit(basis->size(), 700 + key + 10 * L + 1000 * m);
        const auto ref = all_pair_rdms(*basis, a);
        const auto low = low_sector_pair_rdms(L, m, a);
        REQUIRE(low.size() == ref.size());
        for (std::size_t p = 0; p < ref.size(); ++p) {
          CHECK(low[p].i == ref[p].i);
          CHECK(low[p].j == ref[p].j);
          const Eigen::Matrix4d d = low[p].matrix() - ref[p].matrix();
          CHECK(d.cwiseAbs().maxCoeff() <= 1e-14);
          const auto one = low_sector_pair_rdm(L, m, a, ref[p].i, ref[p].j);
          CHECK((one.matrix() - ref[p].matrix()).cwiseAbs().maxCoeff() <= 1e-14);
        }
        if (L < 12) continue;
        CHECK(low_sector_pair_statistics(L, m, a).average_concurrence ==
              doctest::Approx(pair_statistics(*basis, a).average_concurrence).epsilon(1e-12));
      }
    }
  }
  for (const int L : {4, 9, 64, 128}) {
    const SectorBasis two(L, 2);
    for (int j = 1; j < L; ++j) {
      for (int i = 0; i < j; ++i) CHECK(two.rank((Pattern(1) << i) | (Pattern(1) << j)) == pair_index(i, j));
    }
  }
  CHECK_THROWS_AS(low_sector_pair_rdms(5, 3, Eigen::VectorXd::Zero(10)), InvalidArgument);
  CHECK_THROWS_AS(low_sector_pair_rdms(5, 2, Eigen::VectorXd::Zero(5)), InvalidArgument);
  CHECK_THROWS_AS(low_sector_pair_rdm(5, 1, uniform(5), 2, 2), InvalidArgument);
}

TEST_CASE("w is the (i up, j down) population") {
  const auto basis = build_basis(3, 1);
  Eigen::VectorXd a = Eigen::VectorXd::Zero(3);
  a[Eigen::Index(basis->rank(bit(0)))] = 1.0;
  const auto r = pair_rdm(*basis, a, 0, 2);
  CHECK(r.w == 1.0);
  CHECK(r.x == 0.0);
}

TEST_CASE("Wootters oracles agree with each other and with a Werner state") {
  // rho = p |Phi+><Phi+| + (1 - p) I / 4 has C = max(0, (3p - 1) / 2).
  Eigen::Vector4d phi(1, 0, 0, 1);
  phi /= std::sqrt(2.0);
  for (const double p : {0.0, 0.2, 1.0 / 3, 0.5, 0.9, 1.0}) {
    const Eigen::Matrix4d rho = p * phi * phi.transpose() + (1 - p) / 4 * Eigen::Matrix4d::Identity();
    CHECK(oracle::wootters_concurrence(rho) == doctest::Approx(std::max(0.0, (3 * p - 1) / 2)).epsilon(1e-12));
  }
  for (std::uint64_t t = 0; t < 40; ++t) {
    const int L = 3 + int(t % 4);
    const auto full = random_unit(std::size_t(1) << L, derive_seed(53, t));
    for (int j = 1; j < L; ++j) {
      const double general = oracle::wootters_concurrence(oracle::partial_trace_pair(full, L, 0, j));
      CHECK(general == doctest::Approx(oracle::wootters_concurrence_pure(full, L, 0, j)).epsilon(1e-10));
    }
  }
}

TEST_CASE("closed-form concurrence equals the general Wootters oracle on random definite-particle states") {
  double worst = 0.0;
  for (std::uint64_t t = 0; t < 1000; ++t) {
    const int L = 2 + int(t % 7);
    const int m = std::min(L, 1 + int((t / 7) % 3));
    const auto basis = build_basis(L, m);
    const auto a = random_unit(basis->size(), derive_seed(54, t));
    const auto full = oracle::embed(*basis, a);
    for (const auto& r : all_pair_rdms(*basis, a)) {
      const double expected = oracle::wootters_concurrence(oracle::partial_trace_pair(full, L, r.i, r.j));
      worst = std::max(worst, std::abs(concurrence(r) - expected));
    }
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("all-one closed forms for L up to 64") {
  for (int L = 3; L <= 64; ++L) {
    const auto one = build_basis(L, 1);
    const auto two = build_basis(L, 2);
    CHECK(std::abs(average_concurrence(*one, uniform(one->size())) - 2.0 / L) <= 1e-12);
    CHECK(std::abs(average_concurrence(*two, uniform(two->size())) - all_one_two_particle(L)) <= 1e-12);
  }
}

TEST_CASE("pair statistics") {
  const auto basis = build_basis(5, 1);
  const auto st = pair_statistics(*basis, uniform(5));
  CHECK(st.entangled_fraction == 1.0);
  CHECK(st.average_concurrence == doctest::Approx(0.4));
  const auto zero = [](const PairRDM&) { return 0.0; };
  CHECK(pair_statistics(*basis, uniform(5), +zero).entangled_fraction == 0.0);
}

TEST_CASE("promoted IPR identity and the L=8 value of 1/12") {
  for (std::uint64_t t = 0; t < 1000; ++t) {
    const int L = 3 + int(t % 20);
    const auto one = build_basis(L, 1);
    Eigen::VectorXd a = random_unit(one->size(), derive_seed(55, t));
    a.array() -= a.mean();
    a.normalize();
    const auto promoted = promote(DefiniteParticleState(one, a));
    const double ipr1 = inverse_participation_ratio(a);
    const double expected = ((L - 8) * ipr1 + 3) / double((L - 2) * (L - 2));
    CHECK(std::abs(inverse_participation_ratio(promoted.coefficients()) - expected) <= 1e-12);
    if (L == 8) CHECK(std::abs(inverse_participation_ratio(promoted.coefficients()) - 1.0 / 12) <= 1e-15);
  }
}

TEST_CASE("state validation") {
  const auto basis = build_basis(4, 1);
  CHECK_THROWS_AS(DefiniteParticleState(basis, Eigen::VectorXd::Ones(4)), InvalidArgument);
  CHECK_THROWS_AS(DefiniteParticleState(basis, Eigen::VectorXd::Ones(3).normalized()), InvalidArgument);
  CHECK_THROWS_AS(DefiniteParticleState::normalized(basis, Eigen::VectorXd::Zero(4)), InvalidArgument);
  const auto psi = DefiniteParticleState::normalized(basis, Eigen::VectorXd::Ones(4));
  CHECK(psi[2] == doctest::Approx(0.5));
  CHECK(participation_ratio(psi) == doctest::Approx(4.0));
  CHECK_THROWS_AS(pair_rdm(psi, 1, 1), InvalidArgument);
}

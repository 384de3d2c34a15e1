#include <cmath>
#include <cstdio>
#include <string>

#include "spinglass/error.hpp"
#include "spinglass/experiment.hpp"
#include "spinglass/ladder.hpp"
#include "spinglass/oracles.hpp"
#include "spinglass/rng.hpp"
#include "spinglass/sector.hpp"
#include "spinglass/spectrum.hpp"

namespace spinglass {

namespace {

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

VerifyCheck bound_check(std::string name, double worst, double tolerance) {
  return {std::move(name), worst <= tolerance, "max deviation " + sci(worst) + " (tolerance " + sci(tolerance) + ")"};
}

Eigen::VectorXd random_unit(std::size_t n, std::uint64_t key) {
  const NormalStream normal(key);
  Eigen::VectorXd v(static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k) v[static_cast<Eigen::Index>(k)] = normal[k];
  return v.normalized();
}

const Model kModels[] = {Model::infinite_range(), Model::nearest_neighbour(), Model::power_law(1.5)};

VerifyCheck check_rank() {
  std::size_t failures = 0;
  std::size_t states = 0;
  for (int L = 1; L <= 10; ++L) {
    for (int m = 0; m <= L; ++m) {
      const SectorBasis basis(L, m);
      if (basis.size() != binomial(L, m)) ++failures;
      for (std::size_t k = 0; k < basis.size(); ++k, ++states) {
        if (basis.rank(basis[k]) != k || popcount(basis[k]) != m) ++failures;
        if (k > 0 && !(basis[k - 1] < basis[k])) ++failures;
      }
    }
  }
  return {"basis_rank_bijection", failures == 0,
          std::to_string(states) + " states, " + std::to_string(failures) + " mismatches"};
}

VerifyCheck check_sector_vs_full(std::uint64_t seed) {
  double worst = 0.0;
  double off_block = 0.0;
  std::uint64_t draw = 0;
  for (const int L : {4, 6}) {
    for (int s = 0; s < 5; ++s) {
      const auto J = sample_couplings(kModels[s % 3], L, derive_seed(seed, 100 + draw++));
      const auto full = full_space_hamiltonian(J);
      off_block = std::max(off_block, oracle::off_block_magnitude(full));
      for (int m = 0; m <= L; ++m) {
        const auto basis = build_basis(L, m);
        const auto block = oracle::sector_block(full, *basis);
        worst = std::max(worst, (assemble(J, basis).H - block).cwiseAbs().maxCoeff());
      }
    }
  }
  VerifyCheck c = bound_check("sector_matches_full_space", worst, 1e-12);
  c.passed = c.passed && off_block == 0.0;
  c.detail += ", off-block " + sci(off_block);
  return c;
}

VerifyCheck check_all_one(std::uint64_t seed) {
  double worst = 0.0;
  std::uint64_t draw = 0;
  for (const auto& model : kModels) {
    for (const int L : {5, 8, 10}) {
      const auto J = sample_couplings(model, L, derive_seed(seed, 200 + draw++));
      for (int m = 1; m <= 3; ++m) {
        const auto basis = build_basis(L, m);
        const auto M = assemble(J, basis);
        const auto u = all_one_state(basis).coefficients();
        worst = std::max(worst, (M.H * u - M.coupling_sum * u).norm());
      }
    }
  }
  return bound_check("all_one_eigenstate", worst, 1e-10);
}

VerifyCheck check_promotion(std::uint64_t seed) {
  const auto J = sample_couplings(Model::infinite_range(), 8, derive_seed(seed, 300));
  const auto one = build_basis(8, 1);
  const auto two = build_basis(8, 2);
  const auto spec1 = diagonalize(assemble(J, one));
  const auto H2 = assemble(J, two).H;
  double worst = 0.0;
  for (Eigen::Index k = 0; k < spec1.size(); ++k) {
    const auto phi = promote(DefiniteParticleState(one, spec1.eigenvectors.col(k)), two).coefficients();
    worst = std::max(worst, (H2 * phi - spec1.eigenvalues[k] * phi).norm());
  }
  return bound_check("promotion_commutation", worst, 1e-9);
}

VerifyCheck check_concurrence(const VerifyOptions& options) {
  double worst = 0.0;
  for (std::uint64_t t = 0; t < 120; ++t) {
    const int L = 4 + static_cast<int>(t % 3);
    const int m = 1 + static_cast<int>((t / 3) % 3);
    const auto basis = build_basis(L, m);
    const auto a = random_unit(basis->size(), derive_seed(options.seed, 400 + t));
    const auto full = oracle::embed(*basis, a);
    for (int i = 0; i < L; ++i) {
      for (int j = i + 1; j < L; ++j) {
        const double expected = oracle::wootters_concurrence(oracle::partial_trace_pair(full, L, i, j));
        worst = std::max(worst, std::abs(options.concurrence(pair_rdm(*basis, a, i, j)) - expected));
      }
    }
  }
  return bound_check("concurrence_matches_wootters", worst, 1e-10);
}

VerifyCheck check_all_one_closed_forms(const VerifyOptions& options) {
  double worst = 0.0;
  for (int L = 3; L <= 32; ++L) {
    const auto refs = closed_forms(L);
    for (int m = 1; m <= 2; ++m) {
      const auto basis = build_basis(L, m);
      const auto u = all_one_state(basis).coefficients();
      const double got = pair_statistics(*basis, u, options.concurrence).average_concurrence;
      const double expected = m == 1 ? refs.all_one_1p_concurrence : refs.all_one_2p_concurrence;
      worst = std::max(worst, std::abs(got - expected));
    }
  }
  return bound_check("all_one_concurrence_closed_forms", worst, 1e-12);
}

VerifyCheck check_ipr_identity(std::uint64_t seed) {
  double worst = 0.0;
  for (std::uint64_t t = 0; t < 60; ++t) {
    const int L = 6 + static_cast<int>(t % 7);
    const auto one = build_basis(L, 1);
    Eigen::VectorXd a = random_unit(one->size(), derive_seed(seed, 500 + t));
    a.array() -= a.mean();
    a.normalize();
    const DefiniteParticleState psi(one, a);
    const double promoted = inverse_participation_ratio(promote(psi).coefficients());
    worst = std::max(worst, std::abs(promoted - promoted_ipr_from_one_particle(inverse_participation_ratio(a), L)));
  }
  return bound_check("promoted_ipr_identity", worst, 1e-12);
}

VerifyCheck check_classification(std::uint64_t seed) {
  const auto J = sample_couplings(Model::infinite_range(), 10, derive_seed(seed, 600));
  const auto analysis = analyze_sector(J, 2);
  const auto& c = analysis.classification;
  const bool ok = c.promoted == 10 && c.fresh == 35 && c.ambiguous == 0;
  return {"ladder_classification_counts", ok,
          "promoted " + std::to_string(c.promoted) + ", new " + std::to_string(c.fresh) + ", ambiguous " +
              std::to_string(c.ambiguous) + " (expected 10, 35, 0)"};
}

VerifyCheck check_eigensolver(std::uint64_t seed) {
  double worst = 0.0;
  for (const auto& model : kModels) {
    const auto J = sample_couplings(model, 6, derive_seed(seed, 700));
    const auto M = assemble(J, build_basis(6, 3));
    const auto spectrum = diagonalize(M);
    worst = std::max(worst, (spectrum.eigenvalues - oracle::jacobi_eigenvalues(M.H)).cwiseAbs().maxCoeff());
  }
  return bound_check("eigensolver_matches_jacobi", worst, 1e-10);
}

VerifyCheck check_fits() {
  struct Case {
    FitFamily family;
    std::vector<double> params;
  };
  const Case cases[] = {{FitFamily::PowerOffset, {0.564, 0.426, 0.754}},
                        {FitFamily::ExpSaturation, {0.834, 0.402, 21.891}},
                        {FitFamily::PowerLaw, {1.138, 0.900}}};
  double worst = 0.0;
  for (const auto& c : cases) {
    std::vector<DataPoint> data;
    for (int L = 8; L <= 40; L += 2) data.push_back({double(L), model_value(c.family, c.params, L), std::nullopt});
    const auto result = fit(c.family, data);
    for (std::size_t k = 0; k < c.params.size(); ++k) {
      worst = std::max(worst, std::abs(result.parameters[k] - c.params[k]) / std::abs(c.params[k]));
    }
  }
  return bound_check("noiseless_fit_recovery", worst, 1e-6);
}

VerifyCheck check_determinism(std::uint64_t seed) {
  const auto a = sample_couplings(Model::power_law(1.0), 12, seed);
  const auto b = sample_couplings(Model::power_law(1.0), 12, seed);
  EnsembleSpec spec;
  spec.L = 12;
  spec.samples = 128;
  spec.seed = seed;
  const auto e1 = estimate_all(spec, 1);
  const auto e3 = estimate_all(spec, 3);
  const bool ok = a.J == b.J && e1.concurrence.mean == e3.concurrence.mean &&
                  e1.probability.mean == e3.probability.mean && e1.ipr.mean == e3.ipr.mean;
  return {"seeded_determinism", ok, ok ? "identical couplings and estimates for 1 and 3 workers" : "outputs differ"};
}

}  // namespace

std::vector<VerifyCheck> cmd_verify(const VerifyOptions& options) {
  std::vector<VerifyCheck> checks;
  const auto run = [&](auto&& f) {
    try {
      checks.push_back(f());
    } catch (const std::exception& e) {
      checks.push_back({"exception", false, e.what()});
    }
  };
  run([&] { return check_rank(); });
  run([&] { return check_sector_vs_full(options.seed); });
  run([&] { return check_all_one(options.seed); });
  run([&] { return check_promotion(options.seed); });
  run([&] { return check_concurrence(options); });
  run([&] { return check_all_one_closed_forms(options); });
  run([&] { return check_ipr_identity(options.seed); });
  run([&] { return check_classification(options.seed); });
  run([&] { return check_eigensolver(options.seed); });
  run([&] { return check_fits(); });
  run([&] { return check_determinism(options.seed); });
  return checks;
}

}  // namespace spinglass

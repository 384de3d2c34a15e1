#include "spinglass/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "spinglass/error.hpp"

namespace spinglass {

DefiniteParticleState::DefiniteParticleState(BasisPtr basis, Eigen::VectorXd coefficients)
    : basis_(std::move(basis)), a_(std::move(coefficients)) {
  if (!basis_) throw InvalidArgument("state: null basis");
  if (static_cast<std::size_t>(a_.size()) != basis_->size()) {
    throw InvalidArgument("state: " + std::to_string(a_.size()) +
                          " coefficients for a sector of dimension " + std::to_string(basis_->size()));
  }
  if (std::abs(a_.norm() - 1.0) > 1e-12) {
    throw InvalidArgument("state: coefficients are not normalized");
  }
}

DefiniteParticleState DefiniteParticleState::normalized(BasisPtr basis, Eigen::VectorXd coefficients) {
  const double n = coefficients.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw InvalidArgument("state: cannot normalize a zero vector");
  coefficients /= n;
  return {std::move(basis), std::move(coefficients)};
}

Eigen::Matrix4d PairRDM::matrix() const {
  Eigen::Matrix4d m = Eigen::Matrix4d::Zero();
  m(0, 0) = v;
  m(1, 1) = w;
  m(1, 2) = z;
  m(2, 1) = z;
  m(2, 2) = x;
  m(3, 3) = y;
  return m;
}

namespace {

void check_pair(const SectorBasis& basis, const VectorRef& a, int i, int j) {
  const int L = basis.qubits();
  if (i == j || i < 0 || j < 0 || i >= L || j >= L) {
    throw InvalidArgument("pair (" + std::to_string(i) + "," + std::to_string(j) +
                          ") is not two distinct qubits of L=" + std::to_string(L));
  }
  if (static_cast<std::size_t>(a.size()) != basis.size()) {
    throw InvalidArgument("coefficient vector does not match the sector dimension");
  }
}

}  // namespace

PairRDM pair_rdm(const SectorBasis& basis, const VectorRef& a, int i, int j) {
  check_pair(basis, a, i, j);
  PairRDM r{i, j};
  const Pattern swap = bit(i) | bit(j);
  const auto dim = basis.size();
  for (std::size_t k = 0; k < dim; ++k) {
    const Pattern p = basis[k];
    const double ak = a[static_cast<Eigen::Index>(k)];
    const bool up_i = test_bit(p, i);
    const bool up_j = test_bit(p, j);
    if (up_i && up_j) {
      r.v += ak * ak;
    } else if (!up_i && !up_j) {
      r.y += ak * ak;
    } else if (up_i) {
      r.w += ak * ak;
      r.z += ak * a[static_cast<Eigen::Index>(basis.rank_unchecked(p ^ swap))];
    } else {
      r.x += ak * ak;
    }
  }
  return r;
}

PairRDM pair_rdm(const DefiniteParticleState& psi, int i, int j) {
  return pair_rdm(psi.basis(), psi.coefficients(), i, j);
}

std::vector<PairRDM> all_pair_rdms(const SectorBasis& basis, const VectorRef& a) {
  const int L = basis.qubits();
  if (static_cast<std::size_t>(a.size()) != basis.size()) {
    throw InvalidArgument("coefficient vector does not match the sector dimension");
  }
  const auto n = static_cast<std::size_t>(L);
  // Row-major L x L accumulators; only i < j is filled.
  std::vector<double> v(n * n, 0.0), w(n * n, 0.0), x(n * n, 0.0), y(n * n, 0.0), z(n * n, 0.0);
  std::vector<int> ups, downs;
  ups.reserve(n);
  downs.reserve(n);
  for (std::size_t k = 0; k < basis.size(); ++k) {
    const Pattern p = basis[k];
    const double ak = a[static_cast<Eigen::Index>(k)];
    if (ak == 0.0) continue;
    const double a2 = ak * ak;
    ups.clear();
    downs.clear();
    for (int q = 0; q < L; ++q) (test_bit(p, q) ? ups : downs).push_back(q);

    for (std::size_t s = 0; s < ups.size(); ++s) {
      for (std::size_t t = s + 1; t < ups.size(); ++t) v[ups[s] * n + ups[t]] += a2;
    }
    for (std::size_t s = 0; s < downs.size(); ++s) {
      const std::size_t row = downs[s] * n;
      for (std::size_t t = s + 1; t < downs.size(); ++t) y[row + downs[t]] += a2;
    }
    for (const int u : ups) {
      for (const int d : downs) {
        if (u < d) {
          const std::size_t idx = static_cast<std::size_t>(u) * n + static_cast<std::size_t>(d);
          w[idx] += a2;
          z[idx] += ak * a[static_cast<Eigen::Index>(basis.rank_unchecked(p ^ (bit(u) | bit(d))))];
        } else {
          x[static_cast<std::size_t>(d) * n + static_cast<std::size_t>(u)] += a2;
        }
      }
    }
  }
  std::vector<PairRDM> out;
  out.reserve(n * (n - 1) / 2);
  for (int i = 0; i < L; ++i) {
    for (int j = i + 1; j < L; ++j) {
      const std::size_t idx = static_cast<std::size_t>(i) * n + static_cast<std::size_t>(j);
      out.push_back({i, j, v[idx], w[idx], x[idx], y[idx], z[idx]});
    }
  }
  return out;
}

double concurrence(const PairRDM& r) noexcept {
  return std::max(2.0 * (std::abs(r.z) - std::sqrt(r.v * r.y)), 0.0);
}

namespace {

PairStatistics accumulate(const std::vector<PairRDM>& rdms, ConcurrenceFn fn) {
  if (rdms.empty()) return {};
  double sum = 0.0;
  std::size_t entangled = 0;
  for (const auto& r : rdms) {
    const double c = fn(r);
    sum += c;
    if (c > 0.0) ++entangled;
  }
  const auto pairs = static_cast<double>(rdms.size());
  return {sum / pairs, static_cast<double>(entangled) / pairs};
}

void check_low_sector(int L, int m, const VectorRef& a) {
  if (L < 2 || (m != 1 && m != 2)) {
    throw InvalidArgument("low_sector: need L >= 2 and m in {1, 2}");
  }
  const auto l = static_cast<std::size_t>(L);
  const std::size_t dim = m == 1 ? l : l * (l - 1) / 2;
  if (static_cast<std::size_t>(a.size()) != dim) {
    throw InvalidArgument("low_sector: coefficient vector has the wrong length for (L, m)");
  }
}

Eigen::MatrixXd pair_matrix(int L, const VectorRef& a) {
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(L, L);
  for (int j = 1; j < L; ++j) {
    for (int i = 0; i < j; ++i) {
      A(i, j) = A(j, i) = a[static_cast<Eigen::Index>(pair_index(i, j))];
    }
  }
  return A;
}

}  // namespace

PairRDM low_sector_pair_rdm(int L, int m, const VectorRef& a, int i, int j) {
  check_low_sector(L, m, a);
  if (i < 0 || j >= L || i >= j) throw InvalidArgument("low_sector_pair_rdm: need 0 <= i < j < L");
  PairRDM r{i, j};
  if (m == 1) {
    r.w = a[i] * a[i];
    r.x = a[j] * a[j];
    r.z = a[i] * a[j];
    for (int k = 0; k < L; ++k) {
      if (k != i && k != j) r.y += a[k] * a[k];
    }
    return r;
  }
  const auto at = [&](int p, int q) { return a[static_cast<Eigen::Index>(p < q ? pair_index(p, q) : pair_index(q, p))]; };
  r.v = at(i, j) * at(i, j);
  for (int k = 0; k < L; ++k) {
    if (k == i || k == j) continue;
    r.w += at(i, k) * at(i, k);
    r.x += at(j, k) * at(j, k);
    r.z += at(i, k) * at(j, k);
  }
  for (int q = 1; q < L; ++q) {
    if (q == i || q == j) continue;
    for (int p = 0; p < q; ++p) {
      if (p != i && p != j) r.y += at(p, q) * at(p, q);
    }
  }
  return r;
}

std::vector<PairRDM> low_sector_pair_rdms(int L, int m, const VectorRef& a) {
  check_low_sector(L, m, a);
  std::vector<PairRDM> out;
  out.reserve(static_cast<std::size_t>(L) * static_cast<std::size_t>(L - 1) / 2);
  const double total = a.squaredNorm();
  if (m == 1) {
    for (int i = 0; i < L; ++i) {
      for (int j = i + 1; j < L; ++j) {
        const double w = a[i] * a[i];
        const double x = a[j] * a[j];
        out.push_back({i, j, 0.0, w, x, std::max(0.0, total - w - x), a[i] * a[j]});
      }
    }
    return out;
  }
  const Eigen::MatrixXd A = pair_matrix(L, a);
  const Eigen::MatrixXd G = A * A;
  const Eigen::VectorXd rows = A.rowwise().squaredNorm();
  for (int i = 0; i < L; ++i) {
    for (int j = i + 1; j < L; ++j) {
      const double v = A(i, j) * A(i, j);
      const double w = rows[i] - v;
      const double x = rows[j] - v;
      out.push_back({i, j, v, w, x, std::max(0.0, total - v - w - x), G(i, j)});
    }
  }
  return out;
}

PairStatistics low_sector_pair_statistics(int L, int m, const VectorRef& a, ConcurrenceFn fn) {
  return accumulate(low_sector_pair_rdms(L, m, a), fn);
}

PairStatistics pair_statistics(const SectorBasis& basis, const VectorRef& a, ConcurrenceFn fn) {
  return accumulate(all_pair_rdms(basis, a), fn);
}

double average_concurrence(const SectorBasis& basis, const VectorRef& a) {
  return pair_statistics(basis, a).average_concurrence;
}

double average_concurrence(const DefiniteParticleState& psi) {
  return average_concurrence(psi.basis(), psi.coefficients());
}

double inverse_participation_ratio(const VectorRef& a) noexcept {
  return a.array().square().square().sum();
}

double participation_ratio(const VectorRef& a) noexcept { return 1.0 / inverse_participation_ratio(a); }

double participation_ratio(const DefiniteParticleState& psi) noexcept {
  return participation_ratio(psi.coefficients());
}

}  // namespace spinglass

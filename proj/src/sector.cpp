#include "spinglass/sector.hpp"

#include <array>
#include <complex>
#include <ostream>

#include "spinglass/error.hpp"
#include "spinglass/format.hpp"

namespace spinglass {

double diagonal_energy(const CouplingMatrix& J, Pattern p) {
  double e = 0.0;
  for (int i = 0; i < J.L; ++i) {
    const double si = test_bit(p, i) ? 1.0 : -1.0;
    for (int j = i + 1; j < J.L; ++j) {
      const double sj = test_bit(p, j) ? 1.0 : -1.0;
      e += J.J(i, j) * si * sj;
    }
  }
  return e;
}

SectorMatrix assemble(const CouplingMatrix& J, BasisPtr basis) {
  if (!basis) throw InvalidArgument("assemble: null basis");
  if (basis->qubits() != J.L) {
    throw InvalidArgument("assemble: basis has L=" + std::to_string(basis->qubits()) +
                          " but couplings have L=" + std::to_string(J.L));
  }
  const int L = J.L;
  const auto dim = static_cast<Eigen::Index>(basis->size());
  SectorMatrix out{basis, Eigen::MatrixXd::Zero(dim, dim), coupling_sum(J)};
  const Pattern full = low_mask(L);
  for (Eigen::Index k = 0; k < dim; ++k) {
    const Pattern p = (*basis)[static_cast<std::size_t>(k)];
    out.H(k, k) = diagonal_energy(J, p);
    // Each swap-connected pair is visited from its up-at-i side only.
    for (Pattern ups = p; ups != 0; ups &= ups - 1) {
      const int i = lowest_bit(ups);
      for (Pattern downs = ~p & full; downs != 0; downs &= downs - 1) {
        const int j = lowest_bit(downs);
        const double c = J.J(i, j);
        if (c == 0.0) continue;
        const auto l = static_cast<Eigen::Index>(basis->rank_unchecked(p ^ (bit(i) | bit(j))));
        out.H(k, l) = 2.0 * c;
      }
    }
  }
  return out;
}

double sector_trace(const CouplingMatrix& J, const SectorBasis& basis) {
  double t = 0.0;
  for (const Pattern p : basis.states()) t += diagonal_energy(J, p);
  return t;
}

namespace {

using Complex = std::complex<double>;
using SparseC = Eigen::SparseMatrix<Complex>;

SparseC kron(const SparseC& a, const SparseC& b) {
  SparseC out(a.rows() * b.rows(), a.cols() * b.cols());
  std::vector<Eigen::Triplet<Complex>> triplets;
  triplets.reserve(static_cast<std::size_t>(a.nonZeros() * b.nonZeros()));
  for (int ka = 0; ka < a.outerSize(); ++ka) {
    for (SparseC::InnerIterator ia(a, ka); ia; ++ia) {
      for (int kb = 0; kb < b.outerSize(); ++kb) {
        for (SparseC::InnerIterator ib(b, kb); ib; ++ib) {
          triplets.emplace_back(ia.row() * b.rows() + ib.row(), ia.col() * b.cols() + ib.col(),
                                ia.value() * ib.value());
        }
      }
    }
  }
  out.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

SparseC identity(Eigen::Index n) {
  SparseC id(n, n);
  id.setIdentity();
  return id;
}

SparseC from_dense(const Eigen::Matrix2cd& m) { return m.sparseView(); }

// Pauli matrix acting on qubit q; qubit 0 is the least significant tensor factor.
SparseC on_qubit(const SparseC& pauli, int q, int L) {
  return kron(kron(identity(Eigen::Index{1} << (L - 1 - q)), pauli), identity(Eigen::Index{1} << q));
}

}  // namespace

Eigen::SparseMatrix<double> full_space_hamiltonian(const CouplingMatrix& J) {
  const int L = J.L;
  if (L > 12) throw DimensionOverflow("full_space_hamiltonian: L > 12");
  const Complex I{0.0, 1.0};
  Eigen::Matrix2cd sx, sy, sz;
  sx << 0.0, 1.0, 1.0, 0.0;
  sy << 0.0, -I, I, 0.0;
  sz << 1.0, 0.0, 0.0, -1.0;
  const std::array<SparseC, 3> paulis{from_dense(sx), from_dense(sy), from_dense(sz)};

  const Eigen::Index n = Eigen::Index{1} << L;
  SparseC H(n, n);
  for (int i = 0; i < L; ++i) {
    for (int j = i + 1; j < L; ++j) {
      if (J.J(i, j) == 0.0) continue;
      for (const auto& s : paulis) {
        H += J.J(i, j) * (on_qubit(s, i, L) * on_qubit(s, j, L));
      }
    }
  }
  H.prune(Complex{0.0, 0.0});
  Eigen::SparseMatrix<double> out(n, n);
  std::vector<Eigen::Triplet<double>> triplets;
  for (int k = 0; k < H.outerSize(); ++k) {
    for (SparseC::InnerIterator it(H, k); it; ++it) {
      if (it.value().imag() != 0.0) {
        throw Error("full_space_hamiltonian: nonzero imaginary part");
      }
      triplets.emplace_back(it.row(), it.col(), it.value().real());
    }
  }
  out.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

void write_matrix_csv(std::ostream& os, const Eigen::MatrixXd& M) {
  for (Eigen::Index r = 0; r < M.rows(); ++r) {
    for (Eigen::Index c = 0; c < M.cols(); ++c) {
      if (c != 0) os << ',';
      os << format_double(M(r, c));
    }
    os << '\n';
  }
}

}  // namespace spinglass

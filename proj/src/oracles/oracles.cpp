#include "spinglass/oracles.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "spinglass/error.hpp"

namespace spinglass::oracle {

Eigen::VectorXd jacobi_eigenvalues(Eigen::MatrixXd A, double tolerance, int max_sweeps) {
  const Eigen::Index n = A.rows();
  if (A.cols() != n) throw InvalidArgument("jacobi_eigenvalues: matrix is not square");
  const double scale = std::max(1.0, A.norm());
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) off += A(p, q) * A(p, q);
    }
    if (std::sqrt(off) <= tolerance * scale) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (A(p, q) == 0.0) continue;
        const double theta = (A(q, q) - A(p, p)) / (2.0 * A(p, q));
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = A(k, p), akq = A(k, q);
          A(k, p) = c * akp - s * akq;
          A(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = A(p, k), aqk = A(q, k);
          A(p, k) = c * apk - s * aqk;
          A(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  Eigen::VectorXd d = A.diagonal();
  std::sort(d.data(), d.data() + d.size());
  return d;
}

Eigen::VectorXd embed(const SectorBasis& basis, const Eigen::VectorXd& a) {
  if (basis.qubits() > 24) throw DimensionOverflow("embed: L > 24");
  Eigen::VectorXd full = Eigen::VectorXd::Zero(Eigen::Index{1} << basis.qubits());
  for (std::size_t k = 0; k < basis.size(); ++k) {
    full[static_cast<Eigen::Index>(basis[k])] = a[static_cast<Eigen::Index>(k)];
  }
  return full;
}

Eigen::MatrixXd sector_block(const Eigen::SparseMatrix<double>& full, const SectorBasis& basis) {
  const Eigen::MatrixXd dense(full);
  const auto dim = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd block(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    for (Eigen::Index c = 0; c < dim; ++c) {
      block(r, c) = dense(static_cast<Eigen::Index>(basis[static_cast<std::size_t>(r)]),
                          static_cast<Eigen::Index>(basis[static_cast<std::size_t>(c)]));
    }
  }
  return block;
}

double off_block_magnitude(const Eigen::SparseMatrix<double>& full) {
  double worst = 0.0;
  for (int k = 0; k < full.outerSize(); ++k) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(full, k); it; ++it) {
      if (std::popcount(static_cast<unsigned long long>(it.row())) !=
          std::popcount(static_cast<unsigned long long>(it.col()))) {
        worst = std::max(worst, std::abs(it.value()));
      }
    }
  }
  return worst;
}

namespace {

// Row index of the two-qubit configuration: 0 = up-up, 1 = up-down, 2 = down-up, 3 = down-down.
int pair_row(std::size_t index, int i, int j) {
  const bool ui = ((index >> i) & 1U) != 0;
  const bool uj = ((index >> j) & 1U) != 0;
  return (ui ? 0 : 2) + (uj ? 0 : 1);
}

// Amplitudes as a 4 x 2^(L-2) matrix: rows = pair configuration, columns = environment.
Eigen::MatrixXd amplitude_matrix(const Eigen::VectorXd& full_state, int L, int i, int j) {
  if (i == j || i < 0 || j < 0 || i >= L || j >= L) throw InvalidArgument("oracle: bad qubit pair");
  if (full_state.size() != (Eigen::Index{1} << L)) throw InvalidArgument("oracle: state size is not 2^L");
  Eigen::MatrixXd psi = Eigen::MatrixXd::Zero(4, Eigen::Index{1} << (L - 2));
  for (Eigen::Index index = 0; index < full_state.size(); ++index) {
    // Environment label: the remaining L-2 bits packed in order.
    Eigen::Index env = 0;
    int out_bit = 0;
    for (int q = 0; q < L; ++q) {
      if (q == i || q == j) continue;
      if (((index >> q) & 1) != 0) env |= Eigen::Index{1} << out_bit;
      ++out_bit;
    }
    psi(pair_row(static_cast<std::size_t>(index), i, j), env) = full_state[index];
  }
  return psi;
}

Eigen::Matrix4d spin_flip() {
  // sigma_y x sigma_y in the (up-up, up-down, down-up, down-down) order.
  Eigen::Matrix4d Y = Eigen::Matrix4d::Zero();
  Y(0, 3) = -1.0;
  Y(3, 0) = -1.0;
  Y(1, 2) = 1.0;
  Y(2, 1) = 1.0;
  return Y;
}

}  // namespace

Eigen::Matrix4d partial_trace_pair(const Eigen::VectorXd& full_state, int L, int i, int j) {
  const Eigen::MatrixXd psi = amplitude_matrix(full_state, L, i, j);
  return psi * psi.transpose();
}

double wootters_concurrence(const Eigen::Matrix4d& rho) {
  // rho = W W^T from a pivoted LDL^T; the square roots of the eigenvalues of
  // rho Y rho* Y are the singular values of W^T Y W.
  const Eigen::LDLT<Eigen::Matrix4d> ldlt(rho);
  const Eigen::Vector4d d = ldlt.vectorD().cwiseMax(0.0).cwiseSqrt();
  Eigen::Matrix4d L = ldlt.matrixL();
  const Eigen::Matrix4d W = ldlt.transpositionsP().transpose() * (L * d.asDiagonal());
  const Eigen::Matrix4d tau = W.transpose() * spin_flip() * W;
  const Eigen::Vector4d s = Eigen::JacobiSVD<Eigen::Matrix4d>(tau).singularValues();
  return std::max(0.0, s[0] - s[1] - s[2] - s[3]);
}

double wootters_concurrence_pure(const Eigen::VectorXd& full_state, int L, int i, int j) {
  const Eigen::MatrixXd psi = amplitude_matrix(full_state, L, i, j);
  const Eigen::MatrixXd tau = psi.transpose() * spin_flip() * psi;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(tau);
  const Eigen::VectorXd s = svd.singularValues();  // descending
  double c = s.size() > 0 ? s[0] : 0.0;
  for (Eigen::Index k = 1; k < s.size(); ++k) c -= s[k];
  return std::max(0.0, c);
}

}  // namespace spinglass::oracle

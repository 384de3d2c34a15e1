#pragma once

// Brute-force reference implementations used by the test suites and the
// `verify` command. They share no code path with the production kernels.

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "spinglass/basis.hpp"

namespace spinglass::oracle {

/// Eigenvalues (ascending) of a real symmetric matrix by cyclic Jacobi rotations.
Eigen::VectorXd jacobi_eigenvalues(Eigen::MatrixXd A, double tolerance = 1e-14, int max_sweeps = 100);

/// Sector coefficients scattered into the 2^L computational basis (index = bit pattern).
Eigen::VectorXd embed(const SectorBasis& basis, const Eigen::VectorXd& a);

/// The (popcount = m) diagonal block of a full-space operator, in sector basis order.
Eigen::MatrixXd sector_block(const Eigen::SparseMatrix<double>& full, const SectorBasis& basis);

/// Largest |entry| of `full` that connects different popcounts.
double off_block_magnitude(const Eigen::SparseMatrix<double>& full);

/// Two-qubit reduced density matrix of |psi><psi| obtained by summing over all
/// environment configurations, in the order (up-up, up-down, down-up, down-down).
Eigen::Matrix4d partial_trace_pair(const Eigen::VectorXd& full_state, int L, int i, int j);

/// General Wootters concurrence of a real two-qubit density matrix. The roots
/// of the eigenvalues of rho (sigma_y x sigma_y) rho* (sigma_y x sigma_y) are
/// taken as the singular values of W^T (sigma_y x sigma_y) W with rho = W W^T.
double wootters_concurrence(const Eigen::Matrix4d& rho);

/// Wootters concurrence of the pair (i, j) of a pure real state using the
/// singular values of tau = Psi^T (sigma_y x sigma_y) Psi, where Psi holds the
/// state's amplitudes as a 4 x 2^(L-2) matrix. Avoids square roots of
/// near-zero eigenvalues.
double wootters_concurrence_pure(const Eigen::VectorXd& full_state, int L, int i, int j);

}  // namespace spinglass::oracle

#pragma once

#include <iosfwd>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "spinglass/basis.hpp"
#include "spinglass/couplings.hpp"

namespace spinglass {

/// Dense Hamiltonian block of one definite-particle sector.
struct SectorMatrix {
  BasisPtr basis;
  Eigen::MatrixXd H;
  double coupling_sum = 0.0;
};

/// Diagonal element sum_{i<j} J_ij s_i s_j of a basis pattern, s = +1 up / -1 down.
double diagonal_energy(const CouplingMatrix& J, Pattern p);

/// Builds H = sum_{i<j} J_ij (2 S_ij - 1) restricted to the sector.
///
/// Diagonal: sum_{i<j} J_ij s_i s_j. Off-diagonal between patterns that
/// differ by exchanging an up and a down spin at (i, j): 2 J_ij.
SectorMatrix assemble(const CouplingMatrix& J, BasisPtr basis);

/// Sum of eigenvalues predicted from the diagonal rule; equals trace(H).
double sector_trace(const CouplingMatrix& J, const SectorBasis& basis);

/// Explicit 2^L x 2^L Kronecker-product construction of sum_{i<j} J_ij sigma_i . sigma_j.
///
/// Built from the Pauli matrices without using the swap form; intended as an
/// independent reference. Full-space index = bit pattern. Requires L <= 12.
Eigen::SparseMatrix<double> full_space_hamiltonian(const CouplingMatrix& J);

/// Rows of the dense matrix as comma-separated values.
void write_matrix_csv(std::ostream& os, const Eigen::MatrixXd& M);

}  // namespace spinglass

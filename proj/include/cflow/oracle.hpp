#pragma once

#include "cflow/basis.hpp"

namespace cflow {

enum class ModelKind { Aho, Dwp };

struct OracleResult {
  Vector eigenvalues;   // sorted ascending
  Matrix eigenvectors;  // orthogonal; column k pairs with eigenvalues[k]
};

// Truncated Hamiltonian in the harmonic basis:
//   Aho: diag(i + 1/2) + g * X4
//   Dwp: diag(i + 1/2) + X4/2 - g * X2   (g meaning g')
SymMatrix build_hamiltonian(ModelKind kind, double g, int n);

// Cyclic Jacobi rotations until the off-diagonal Frobenius norm drops below
// sweep_tol times the diagonal norm. Independent of the flow code path by
// design: this is the brute-force cross-check. Throws NoConvergenceError
// after 100 sweeps. Ties in the ascending eigenvalue sort are broken by the
// index of the largest-magnitude eigenvector component.
OracleResult jacobi_diagonalize(const SymMatrix& m, double sweep_tol = 1e-12);

}  // namespace cflow

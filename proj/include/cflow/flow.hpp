#pragma once

#include "cflow/basis.hpp"

#include <limits>

namespace cflow {

// Below this gap (in hbar*omega units) a coupled resolvent denominator is
// treated as a degeneracy: round-off amplification would exceed any sane
// integrator tolerance.
inline constexpr double kDefaultGapFloor = 1e-8;

// Full flow variable set at coupling g.
//
// Index convention for the overlap matrix (fixed throughout the project):
//   overlaps(i, j) = <psi_j(0) | psi_i(g)>
// i.e. row i = flowed state i expanded over the initial (g = 0) basis.
struct FlowState {
  double g = 0.0;
  Vector energies;   // E_i(g)
  SymMatrix h_int;   // <psi_i(g)| H_int |psi_j(g)>
  Matrix overlaps;   // c_ij(g)

  int size() const { return static_cast<int>(energies.size()); }

  // Flat layout [energies; h_int; overlaps] of length N + 2N^2 so the ODE
  // integrator can treat the state as a single real vector.
  Vector pack() const;
  static FlowState unpack(double g, const Vector& y, int n);
  static int packed_size(int n) { return n + 2 * n * n; }
};

struct FlowDerivative {
  Vector d_energies;
  SymMatrix d_h_int;   // returned exactly symmetric (computed once, mirrored)
  Matrix d_overlaps;
};

// Exact right-hand sides of the coupling-flow equations:
//   dE_i/dg    = H(i,i)
//   dH(i,j)/dg = sum_{k!=i} H(i,k)H(k,j)/(E_i-E_k) + sum_{k!=j} H(i,k)H(k,j)/(E_j-E_k)
//   dc(i,j)/dg = sum_{k!=i} H(k,i)/(E_i-E_k) * c(k,j)
// Throws NearDegeneracyError when a pair with H(i,k) != 0 has |E_i - E_k| < gap_floor.
FlowDerivative flow_rhs(const FlowState& state, double gap_floor = kDefaultGapFloor);

// Same RHS on the packed layout; y and dy have length packed_size(n).
void flow_rhs_packed(int n, const double* y, double* dy, double gap_floor, double g);

struct CoupledGap {
  double gap = std::numeric_limits<double>::infinity();  // +inf if no pair qualifies
  int i = -1;
  int k = -1;
};

// Minimum |E_i - E_k| over pairs i != k with |h_int(i,k)| > coupling_floor.
CoupledGap min_coupled_gap(const FlowState& state, double coupling_floor);

// The connection A(k,i) = H(k,i)/(E_i - E_k), A(i,i) = 0, is exactly
// antisymmetric for symmetric H; asserted on every RHS evaluation in debug
// builds, exposed here for tests.
bool connection_is_antisymmetric(const Vector& energies, const SymMatrix& h_int);

}  // namespace cflow

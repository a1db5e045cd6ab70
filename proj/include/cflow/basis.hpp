#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

namespace cflow {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Real symmetric matrix. Symmetry is maintained by construction everywhere
// (entries are mirrored, never recomputed independently per triangle).
using SymMatrix = Eigen::MatrixXd;

// Truncation setup for the harmonic-oscillator basis (m = omega = hbar = 1).
struct BasisConfig {
  int n_states = 50;  // truncation dimension N >= 2
  std::optional<std::vector<double>> x_grid;  // strictly increasing, for wavefunction output

  void validate() const;  // throws Error on violation
};

// Harmonic eigenvalues E_i = i + 1/2, i = 0..N-1.
Vector harmonic_energies(const BasisConfig& config);

// <i|x^power|j> in the harmonic eigenbasis, power in {1, 2, 4}: exact
// ladder-operator closed forms, taken as the N x N top-left block of the
// infinite matrix. Entries with i+j+power odd are exact zeros (parity).
SymMatrix x_power_matrix(int power, const BasisConfig& config);

// Normalized oscillator eigenfunction
//   phi_j(x) = (pi^{1/4} sqrt(2^j j!))^{-1} e^{-x^2/2} H_j(x),
// evaluated with the normalized recurrence
//   phi_{n+1} = x sqrt(2/(n+1)) phi_n - sqrt(n/(n+1)) phi_{n-1},
// which stays in range for j <= 60, |x| <= 10 (no factorial blowup).
double hermite_function(int j, double x);

// All of phi_0(x)..phi_jmax(x) in one recurrence pass.
Vector hermite_functions(int jmax, double x);

}  // namespace cflow

#pragma once

#include "cflow/models.hpp"

#include <complex>
#include <vector>

namespace cflow {

using ComplexVector = Eigen::VectorXcd;

// Adiabatic-basis amplitudes riding on a flow state, for a linear ramp g = vt.
// Physical amplitudes are a_n(t) = alpha_n * exp(-i Theta_n) with the
// dynamical phase Theta_n = (1/v) * integral of E_n dg.
struct NonadiabaticState {
  FlowState flow;
  ComplexVector amplitudes;  // alpha_n(g)
  Vector phases;             // Theta_n(g)
  double ramp_rate = 1.0;    // v = dg/dt, nonzero

  int size() const { return flow.size(); }

  // Packed layout [flow; Re alpha; Im alpha; Theta], length N + 2N^2 + 3N.
  Vector pack() const;
  static NonadiabaticState unpack(double g, const Vector& y, int n, double ramp_rate);
  static int packed_size(int n) { return FlowState::packed_size(n) + 3 * n; }
};

struct NonadiabaticDerivative {
  FlowDerivative flow;
  ComplexVector d_amplitudes;
  Vector d_phases;
};

// Augmented RHS:
//   d alpha_n/dg = sum_{m!=n} H(n,m)/(E_n-E_m) * alpha_m * exp(i(Theta_n-Theta_m))
//   d Theta_n/dg = E_n / v
// plus the plain flow RHS. The phase-dressed generator is anti-Hermitian, so
// sum|alpha_n|^2 is conserved. Diagonal connection is exactly zero for the
// real-symmetric H_int and the c_ii normalization (asserted in debug builds).
NonadiabaticDerivative nonadiabatic_rhs(const NonadiabaticState& state,
                                        double gap_floor = kDefaultGapFloor);

struct RampSample {
  double g = 0.0;
  double t = 0.0;        // g / v
  Vector probabilities;  // |alpha_n|^2, all N levels
  Vector phases;         // Theta_n
};

struct RampTrajectory {
  std::vector<RampSample> samples;
  FlowState final_flow;  // flow state at the last sample (sudden-limit checks)
};

// Joint integration of flow + amplitudes + phases from alpha_n(0) = delta_{n,init}
// through the sample grid (appending g_max if absent). Monotonic ramps only;
// callers chain intervals for general g(t). In addition to max_step the step
// is capped at v*pi/(4*E_ref), E_ref the largest |E_n| among levels holding
// amplitude above 1e-10, so every relevant phase oscillation stays resolved.
RampTrajectory evolve_ramp(const ModelSpec& model, double ramp_rate, double g_max,
                           int init_level, const std::vector<double>& sample_grid,
                           const IntegratorConfig& config = {},
                           double gap_floor = kDefaultGapFloor);

}  // namespace cflow

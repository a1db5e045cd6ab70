#pragma once

#include "cflow/flow.hpp"
#include "cflow/integrator.hpp"
#include "cflow/oracle.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace cflow {

// Eigenvalues sampled on a coupling grid.
struct SpectrumTable {
  std::vector<double> g_values;
  std::vector<Vector> energies;        // full N-vector per g value
  std::vector<int> levels_requested;
};

// Model definition. A Dwp spec embeds the AHO flow state at g = 1/2, which is
// the unperturbed point of the double-well flow.
struct ModelSpec {
  ModelKind kind = ModelKind::Aho;
  int n_states = 50;
  std::optional<FlowState> aho_at_half;  // required (and auto-built) for Dwp

  static ModelSpec aho(int n);
  // Solves the AHO flow 0 -> 1/2 with the given integrator settings.
  static ModelSpec dwp(int n, const IntegratorConfig& config = {});

  void validate() const;
  FlowState initial_state() const;
};

// A solved trajectory with the full flow state retained at every target
// (wavefunction reconstruction needs the overlap layers, not just energies).
struct ModelSolution {
  ModelSpec spec;
  std::vector<double> g_values;
  std::vector<FlowState> states;

  SpectrumTable spectrum(const std::vector<int>& levels) const;
  const FlowState& state_at(double g_value) const;  // throws if not a solved target
};

// Flow state at g = 0 for the quartic oscillator: harmonic energies, exact
// <i|x^4|j> interaction matrix, identity overlaps.
FlowState aho_initial(int n);

// Flow state at g' = 0 for the double well, chained from the AHO solution at
// g = 1/2: energies copied, H_int = C (-X2) C^T with C the AHO overlap matrix
// (congruence form of the double basis sum), overlaps reset to identity.
// Throws ChainMismatchError unless aho_state_at_half.g == 0.5 (within 1e-12).
FlowState dwp_initial(const FlowState& aho_state_at_half);

// Integrate a model through the given increasing targets (>= 0).
ModelSolution solve_model(const ModelSpec& spec, const std::vector<double>& g_targets,
                          const IntegratorConfig& config = {},
                          double gap_floor = kDefaultGapFloor);

// Spec'd conveniences on top of solve_model.
std::pair<SpectrumTable, FlowState> solve_aho(int n, const std::vector<double>& g_targets,
                                              const IntegratorConfig& config = {});
SpectrumTable solve_dwp(int n, const std::vector<double>& gp_targets,
                        const IntegratorConfig& config = {});

struct DensityResult {
  std::vector<double> density;   // |psi(x)|^2, renormalized to unit trapezoid integral
  double raw_norm = 0.0;         // trapezoid integral before renormalization
  bool grid_too_narrow = false;  // raw_norm < 0.999: grid misses probability
};

// |psi_level(x)|^2 on x_grid at a solved coupling value. For Dwp the two
// overlap layers are composed: coefficients = row(level) of C_dwp * C_aho.
DensityResult wavefunction_density(const ModelSolution& solution, int level,
                                   double g_value, const std::vector<double>& x_grid);

// V(x) = x^2/2 + x^4/2 - g' x^2, the double-well potential in the
// AHO-anchored split (pure AHO at g' = 0, wells open up for g' > 1/2).
std::vector<double> potential_curve(double g_prime, const std::vector<double>& x_grid);

}  // namespace cflow

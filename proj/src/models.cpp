#include "cflow/models.hpp"

#include "cflow/errors.hpp"

#include <cmath>
#include <sstream>

namespace cflow {

ModelSpec ModelSpec::aho(int n) {
  ModelSpec spec;
  spec.kind = ModelKind::Aho;
  spec.n_states = n;
  spec.validate();
  return spec;
}

ModelSpec ModelSpec::dwp(int n, const IntegratorConfig& config) {
  ModelSpec spec;
  spec.kind = ModelKind::Dwp;
  spec.n_states = n;
  auto [table, at_half] = solve_aho(n, {0.5}, config);
  spec.aho_at_half = std::move(at_half);
  spec.validate();
  return spec;
}

void ModelSpec::validate() const {
  BasisConfig{n_states, std::nullopt}.validate();
  if (kind == ModelKind::Dwp) {
    if (!aho_at_half) {
      throw Error("models: a Dwp spec must embed the AHO flow state at g = 1/2");
    }
    if (aho_at_half->size() != n_states) {
      std::ostringstream os;
      os << "models: embedded AHO state has N = " << aho_at_half->size()
         << ", spec has N = " << n_states;
      throw Error(os.str());
    }
  }
}

FlowState ModelSpec::initial_state() const {
  validate();
  return kind == ModelKind::Aho ? aho_initial(n_states) : dwp_initial(*aho_at_half);
}

FlowState aho_initial(int n) {
  BasisConfig config{n, std::nullopt};
  FlowState s;
  s.g = 0.0;
  s.energies = harmonic_energies(config);
  s.h_int = x_power_matrix(4, config);
  s.overlaps = Matrix::Identity(n, n);
  return s;
}

FlowState dwp_initial(const FlowState& aho_state_at_half) {
  if (std::abs(aho_state_at_half.g - 0.5) > 1e-12) {
    throw ChainMismatchError(aho_state_at_half.g);
  }
  const int n = aho_state_at_half.size();
  const Matrix& c = aho_state_at_half.overlaps;  // row i = AHO state i in the harmonic basis

  FlowState s;
  s.g = 0.0;
  s.energies = aho_state_at_half.energies;
  // <psi_i | -x^2 | psi_j> as a congruence instead of the literal double sum.
  SymMatrix h = c * (-x_power_matrix(2, BasisConfig{n, std::nullopt})) * c.transpose();
  s.h_int = 0.5 * (h + h.transpose());  // repair round-off asymmetry from the two products
  s.overlaps = Matrix::Identity(n, n);
  return s;
}

ModelSolution solve_model(const ModelSpec& spec, const std::vector<double>& g_targets,
                          const IntegratorConfig& config, double gap_floor) {
  if (g_targets.empty()) throw Error("models: no coupling targets given");
  if (g_targets.front() < 0.0) throw Error("models: coupling targets must be >= 0");

  const int n = spec.n_states;
  const FlowState init = spec.initial_state();

  auto rhs = [n, gap_floor](double g, const Vector& y, Vector& dy) {
    flow_rhs_packed(n, y.data(), dy.data(), gap_floor, g);
  };
  const std::vector<Vector> packed = integrate(rhs, init.pack(), 0.0, g_targets, config);

  ModelSolution solution;
  solution.spec = spec;
  solution.g_values = g_targets;
  solution.states.reserve(g_targets.size());
  for (std::size_t k = 0; k < g_targets.size(); ++k) {
    solution.states.push_back(FlowState::unpack(g_targets[k], packed[k], n));
  }
  return solution;
}

SpectrumTable ModelSolution::spectrum(const std::vector<int>& levels) const {
  for (int level : levels) {
    if (level < 0 || level >= spec.n_states) {
      std::ostringstream os;
      os << "models: level " << level << " outside 0.." << spec.n_states - 1;
      throw Error(os.str());
    }
  }
  SpectrumTable table;
  table.g_values = g_values;
  table.levels_requested = levels;
  table.energies.reserve(states.size());
  for (const FlowState& s : states) table.energies.push_back(s.energies);
  return table;
}

const FlowState& ModelSolution::state_at(double g_value) const {
  for (std::size_t k = 0; k < g_values.size(); ++k) {
    if (g_values[k] == g_value || std::abs(g_values[k] - g_value) < 1e-12) {
      return states[k];
    }
  }
  std::ostringstream os;
  os << "models: g = " << g_value << " is not among the solved targets";
  throw Error(os.str());
}

std::pair<SpectrumTable, FlowState> solve_aho(int n, const std::vector<double>& g_targets,
                                              const IntegratorConfig& config) {
  ModelSolution sol = solve_model(ModelSpec::aho(n), g_targets, config);
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  return {sol.spectrum(all), sol.states.back()};
}

SpectrumTable solve_dwp(int n, const std::vector<double>& gp_targets,
                        const IntegratorConfig& config) {
  ModelSolution sol = solve_model(ModelSpec::dwp(n, config), gp_targets, config);
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  return sol.spectrum(all);
}

DensityResult wavefunction_density(const ModelSolution& solution, int level,
                                   double g_value, const std::vector<double>& x_grid) {
  const int n = solution.spec.n_states;
  if (level < 0 || level >= n) {
    std::ostringstream os;
    os << "models: density level " << level << " outside 0.." << n - 1;
    throw Error(os.str());
  }
  if (x_grid.size() < 2) throw Error("models: density needs at least two grid points");
  const FlowState& state = solution.state_at(g_value);

  // Coefficients of psi_level over the harmonic basis: one overlap layer for
  // AHO, two composed layers for the chained DWP solution.
  Eigen::RowVectorXd coeff = state.overlaps.row(level);
  if (solution.spec.kind == ModelKind::Dwp) {
    coeff = coeff * solution.spec.aho_at_half->overlaps;
  }

  DensityResult result;
  result.density.resize(x_grid.size());
  for (std::size_t p = 0; p < x_grid.size(); ++p) {
    const Vector phi = hermite_functions(n - 1, x_grid[p]);
    const double psi = coeff * phi;
    result.density[p] = psi * psi;
  }

  double norm = 0.0;
  for (std::size_t p = 1; p < x_grid.size(); ++p) {
    norm += 0.5 * (result.density[p] + result.density[p - 1]) * (x_grid[p] - x_grid[p - 1]);
  }
  result.raw_norm = norm;
  result.grid_too_narrow = norm < 0.999;
  if (norm > 0.0) {
    for (double& d : result.density) d /= norm;
  }
  return result;
}

std::vector<double> potential_curve(double g_prime, const std::vector<double>& x_grid) {
  std::vector<double> v(x_grid.size());
  for (std::size_t p = 0; p < x_grid.size(); ++p) {
    const double x2 = x_grid[p] * x_grid[p];
    v[p] = 0.5 * x2 + 0.5 * x2 * x2 - g_prime * x2;
  }
  return v;
}

}  // namespace cflow

#include "cflow/errors.hpp"
#include "cflow/models.hpp"
#include "cflow/oracle.hpp"
#include "support/quadrature.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <cstdio>

using namespace cflow;

namespace {

// true iff value rounds to the same 8 significant digits as the printed reference
bool matches_printed(double value, double printed) {
  char a[40], b[40];
  std::snprintf(a, sizeof(a), "%.8g", value);
  std::snprintf(b, sizeof(b), "%.8g", printed);
  return std::string(a) == std::string(b);
}

IntegratorConfig tight() {
  IntegratorConfig c;
  c.rel_tol = 1e-12;
  c.abs_tol = 1e-13;
  return c;
}

}  // namespace

TEST_CASE("quartic oscillator initial state") {
  const FlowState s = aho_initial(3);
  CHECK(s.g == 0.0);
  CHECK(s.energies(0) == 0.5);
  CHECK(s.energies(2) == 2.5);
  CHECK(s.overlaps == Matrix::Identity(3, 3));
  CHECK(s.h_int(0, 1) == 0.0);

  const auto gh = testsupport::gauss_hermite(200);
  CHECK(std::abs(s.h_int(0, 0) - testsupport::x_power_element_quadrature(0, 0, 4, gh)) < 1e-12);
}

TEST_CASE("quartic spectrum reproduces the published values") {
  const auto [table, final_state] = solve_aho(50, {0.1, 0.5, 1.0}, {});
  CHECK(matches_printed(table.energies[0](0), 0.55914633));
  CHECK(matches_printed(table.energies[1](0), 0.69617582));
  CHECK(matches_printed(table.energies[2](0), 0.80377065));
  CHECK(matches_printed(table.energies[2](1), 2.7378923));
  CHECK(matches_printed(table.energies[2](2), 5.1792917));
  CHECK(final_state.g == 1.0);
}

TEST_CASE("g = 0 target returns the harmonic point without integration error") {
  const auto [table, final_state] = solve_aho(12, {0.0}, {});
  for (int i = 0; i < 12; ++i) CHECK(table.energies[0](i) == i + 0.5);
  CHECK(final_state.overlaps == Matrix::Identity(12, 12));
}

TEST_CASE("flow equals diagonalization of the truncated matrix") {
  for (int n : {6, 12}) {
    const ModelSolution sol = solve_model(ModelSpec::aho(n), {0.5, 2.0}, tight());
    for (std::size_t k = 0; k < sol.g_values.size(); ++k) {
      const OracleResult oracle =
          jacobi_diagonalize(build_hamiltonian(ModelKind::Aho, sol.g_values[k], n));
      Vector sorted = sol.states[k].energies;
      std::sort(sorted.data(), sorted.data() + n);
      CHECK((sorted - oracle.eigenvalues).cwiseAbs().maxCoeff() < 1e-8);
    }
  }
}

TEST_CASE("chained double-well initial state") {
  const auto [table, at_half] = solve_aho(50, {0.5}, tight());
  const FlowState dwp = dwp_initial(at_half);

  CHECK(dwp.g == 0.0);
  CHECK(matches_printed(dwp.energies(0), 0.69617582));
  CHECK(dwp.h_int(0, 1) == 0.0);  // parity survives the congruence
  CHECK(dwp.overlaps == Matrix::Identity(50, 50));

  // h_int(0,0) = -<x^2> of the ground state, cross-checked by the oracle
  const OracleResult r = jacobi_diagonalize(build_hamiltonian(ModelKind::Aho, 0.5, 50));
  const SymMatrix x2 = x_power_matrix(2, {50, std::nullopt});
  const double expect = -r.eigenvectors.col(0).dot(x2 * r.eigenvectors.col(0));
  CHECK(std::abs(dwp.h_int(0, 0) - expect) < 1e-8);

  FlowState wrong = at_half;
  wrong.g = 0.4;
  CHECK_THROWS_AS(dwp_initial(wrong), ChainMismatchError);
}

TEST_CASE("double-well spectrum reproduces the published values") {
  const SpectrumTable table = solve_dwp(50, {0.5, 1.0}, tight());
  CHECK(std::abs(table.energies[0](0) - 0.53018104538) < 1e-9);
  CHECK(std::abs(table.energies[0](1) - 1.8998365150) < 1e-9);
  CHECK(std::abs(table.energies[1](0) - 0.32882650295) < 1e-9);
  CHECK(std::abs(table.energies[1](1) - 1.4172681012) < 1e-9);
}

TEST_CASE("energy slopes carry the sign of the diagonal interaction") {
  const ModelSolution sol = solve_model(ModelSpec::aho(10), {0.2, 0.4, 0.8, 1.6}, {});
  for (std::size_t k = 1; k < sol.states.size(); ++k) {
    for (int i = 0; i < 10; ++i) {
      CHECK(sol.states[k].energies(i) > sol.states[k - 1].energies(i));  // <x^4> > 0
      CHECK(sol.states[k].h_int(i, i) > 0.0);
    }
  }
  const ModelSolution dwp = solve_model(ModelSpec::dwp(10, {}), {0.5, 1.0, 2.0}, {});
  for (std::size_t k = 1; k < dwp.states.size(); ++k) {
    for (int i = 0; i < 10; ++i) {
      CHECK(dwp.states[k].energies(i) < dwp.states[k - 1].energies(i));  // -<x^2> < 0
      CHECK(dwp.states[k].h_int(i, i) < 0.0);
    }
  }
}

TEST_CASE("overlap matrices stay orthogonal along both flows") {
  const ModelSolution aho = solve_model(ModelSpec::aho(20), {1.0, 5.0}, {});
  for (const FlowState& s : aho.states) {
    const Matrix defect = s.overlaps.transpose() * s.overlaps - Matrix::Identity(20, 20);
    CHECK(defect.cwiseAbs().maxCoeff() < 1e-8);
  }
  const ModelSolution dwp = solve_model(ModelSpec::dwp(20, {}), {2.0, 4.0}, {});
  for (const FlowState& s : dwp.states) {
    const Matrix defect = s.overlaps.transpose() * s.overlaps - Matrix::Identity(20, 20);
    CHECK(defect.cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("composed overlap layers diagonalize the assembled double-well matrix") {
  const int n = 20;
  const ModelSpec spec = ModelSpec::dwp(n, tight());
  const ModelSolution sol = solve_model(spec, {2.0}, tight());
  const Matrix composed = sol.states[0].overlaps * spec.aho_at_half->overlaps;
  const Matrix m = build_hamiltonian(ModelKind::Dwp, 2.0, n);
  const Matrix should_be_diag = composed * m * composed.transpose();
  const Matrix off = should_be_diag - Matrix(sol.states[0].energies.asDiagonal());
  CHECK(off.cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("harmonic ground density is the unit gaussian") {
  const ModelSolution sol = solve_model(ModelSpec::aho(10), {0.0}, {});
  std::vector<double> grid;
  for (int k = 0; k <= 400; ++k) grid.push_back(-5.0 + k * 0.025);
  const DensityResult d = wavefunction_density(sol, 0, 0.0, grid);
  CHECK(!d.grid_too_narrow);
  CHECK(d.raw_norm == doctest::Approx(1.0).epsilon(1e-6));
  for (std::size_t p = 0; p < grid.size(); p += 25) {
    const double expect = std::exp(-grid[p] * grid[p]) / std::sqrt(M_PI);
    CHECK(std::abs(d.density[p] - expect) < 1e-8);
  }
}

TEST_CASE("narrow grids are flagged") {
  const ModelSolution sol = solve_model(ModelSpec::aho(10), {0.0}, {});
  std::vector<double> grid;
  for (int k = 0; k <= 20; ++k) grid.push_back(-0.5 + k * 0.05);
  const DensityResult d = wavefunction_density(sol, 0, 0.0, grid);
  CHECK(d.grid_too_narrow);
  CHECK(d.raw_norm < 0.999);
}

TEST_CASE("density rejects bad levels and unsolved couplings") {
  const ModelSolution sol = solve_model(ModelSpec::aho(6), {0.5}, {});
  std::vector<double> grid{-1.0, 0.0, 1.0};
  CHECK_THROWS_AS(wavefunction_density(sol, 6, 0.5, grid), Error);
  CHECK_THROWS_AS(wavefunction_density(sol, 0, 0.7, grid), Error);
}

TEST_CASE("potential curve values and stationary points") {
  CHECK(potential_curve(0.0, {1.0})[0] == 1.0);
  CHECK(potential_curve(0.5, {0.0})[0] == 0.0);

  // locate the right-hand minimum of dV/dx by bisection for g' = 6
  const double gp = 6.0;
  auto dv = [gp](double x) { return x + 2.0 * x * x * x - 2.0 * gp * x; };
  double lo = 0.5, hi = 4.0;
  REQUIRE(dv(lo) < 0.0);
  REQUIRE(dv(hi) > 0.0);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (dv(mid) < 0.0 ? lo : hi) = mid;
  }
  const double x_min = 0.5 * (lo + hi);
  CHECK(std::abs(dv(x_min)) < 1e-12);
  // the minimum sits where the well term balances: x^2 = g' - 1/2
  CHECK(x_min == doctest::Approx(std::sqrt(gp - 0.5)).epsilon(1e-10));
  const auto v = potential_curve(gp, {x_min - 0.1, x_min, x_min + 0.1});
  CHECK(v[1] < v[0]);
  CHECK(v[1] < v[2]);
}

TEST_CASE("model spec validation") {
  CHECK_THROWS_AS(ModelSpec::aho(1), Error);
  ModelSpec broken;
  broken.kind = ModelKind::Dwp;
  broken.n_states = 10;
  CHECK_THROWS_AS(broken.validate(), Error);
  CHECK_THROWS_AS(solve_model(ModelSpec::aho(6), {}, {}), Error);
  CHECK_THROWS_AS(solve_model(ModelSpec::aho(6), {-1.0, 2.0}, {}), Error);
}

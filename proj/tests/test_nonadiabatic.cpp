#include "cflow/errors.hpp"
#include "cflow/models.hpp"
#include "cflow/nonadiabatic.hpp"

#include <doctest.h>

#include <cmath>

using namespace cflow;

TEST_CASE("amplitude derivative at the quartic starting point") {
  NonadiabaticState s;
  s.flow = aho_initial(4);
  s.amplitudes = ComplexVector::Zero(4);
  s.amplitudes(0) = 1.0;
  s.phases = Vector::Zero(4);
  s.ramp_rate = 1.0;

  const NonadiabaticDerivative d = nonadiabatic_rhs(s);
  // d alpha_2 = H(2,0)/(E_2 - E_0) = (3 sqrt(2)/2) / 2
  CHECK(d.d_amplitudes(2).real() == doctest::Approx(3.0 * std::sqrt(2.0) / 4.0).epsilon(1e-14));
  CHECK(d.d_amplitudes(2).imag() == 0.0);
  CHECK(std::abs(d.d_amplitudes(1)) == 0.0);  // parity
  CHECK(d.d_phases(0) == 0.5);                 // E_0 / v at g = 0
  CHECK(std::abs(d.d_amplitudes(0)) == 0.0);   // zero diagonal connection
}

TEST_CASE("zero ramp rate is rejected") {
  NonadiabaticState s;
  s.flow = aho_initial(3);
  s.amplitudes = ComplexVector::Zero(3);
  s.amplitudes(0) = 1.0;
  s.phases = Vector::Zero(3);
  s.ramp_rate = 0.0;
  CHECK_THROWS_AS(nonadiabatic_rhs(s), ZeroRampRateError);
  CHECK_THROWS_AS(evolve_ramp(ModelSpec::aho(3), 0.0, 1.0, 0, {1.0}), ZeroRampRateError);
}

TEST_CASE("no evolution for g_max = 0") {
  const RampTrajectory traj = evolve_ramp(ModelSpec::aho(5), 2.0, 0.0, 0, {});
  REQUIRE(traj.samples.size() == 1);
  CHECK(traj.samples[0].probabilities(0) == 1.0);
  CHECK(traj.samples[0].probabilities.tail(4).cwiseAbs().maxCoeff() == 0.0);
  CHECK(traj.samples[0].phases.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("unitarity and parity superselection along a ramp") {
  const ModelSpec spec = ModelSpec::dwp(20, {});
  std::vector<double> samples;
  for (int k = 0; k <= 30; ++k) samples.push_back(0.1 * k);
  const RampTrajectory traj = evolve_ramp(spec, 3.0, 3.0, 0, samples);
  for (const RampSample& s : traj.samples) {
    CHECK(std::abs(s.probabilities.sum() - 1.0) < 1e-6);
    for (int odd = 1; odd < 20; odd += 2) CHECK(s.probabilities(odd) < 1e-12);
  }
}

TEST_CASE("occupation leakage grows with the ramp rate") {
  const ModelSpec spec = ModelSpec::dwp(20, {});
  double previous = -1.0;
  for (double v : {0.1, 1.0, 3.0, 30.0, 1000.0}) {
    const RampTrajectory traj = evolve_ramp(spec, v, 3.0, 0, {3.0});
    const double leakage = 1.0 - traj.samples.back().probabilities(0);
    CHECK(leakage >= previous - 1e-9);
    previous = leakage;
  }
}

TEST_CASE("fast ramps approach the sudden limit") {
  const ModelSpec spec = ModelSpec::dwp(20, {});
  const RampTrajectory traj = evolve_ramp(spec, 1000.0, 2.0, 0, {2.0});
  // sudden approximation: populations equal squared overlaps with the start state
  const Vector sudden = traj.final_flow.overlaps.col(0).array().square();
  CHECK((traj.samples.back().probabilities - sudden).cwiseAbs().maxCoeff() < 0.05);
}

TEST_CASE("phases accumulate the energy integral") {
  const int n = 20;
  const double v = 3.0;
  const ModelSpec spec = ModelSpec::dwp(n, {});
  std::vector<double> samples;
  const double step = 0.001;
  for (int k = 0; k <= 3000; ++k) samples.push_back(step * k);
  const RampTrajectory traj = evolve_ramp(spec, v, 3.0, 0, samples);

  // trapezoid of the sampled E_n over g, against the ODE-accumulated Theta_n
  const ModelSolution sol = solve_model(spec, samples, {});
  Vector acc = Vector::Zero(n);
  double max_err = 0.0;
  for (std::size_t k = 1; k < samples.size(); ++k) {
    const double dg = samples[k] - samples[k - 1];
    acc += 0.5 * dg / v * (sol.states[k].energies + sol.states[k - 1].energies);
    max_err = std::max(max_err, (traj.samples[k].phases - acc).cwiseAbs().maxCoeff());
  }
  CHECK(max_err < 1e-6);
}

TEST_CASE("evolve_ramp validates its inputs") {
  CHECK_THROWS_AS(evolve_ramp(ModelSpec::aho(4), -1.0, 1.0, 0, {1.0}), Error);
  CHECK_THROWS_AS(evolve_ramp(ModelSpec::aho(4), 1.0, 1.0, 7, {1.0}), Error);
  CHECK_THROWS_AS(evolve_ramp(ModelSpec::aho(4), 1.0, 1.0, 0, {2.0}), Error);
  CHECK_THROWS_AS(evolve_ramp(ModelSpec::aho(4), 1.0, -1.0, 0, {}), Error);
}

TEST_CASE("nonadiabatic state packs and unpacks") {
  NonadiabaticState s;
  s.flow = aho_initial(4);
  s.amplitudes = ComplexVector::Zero(4);
  s.amplitudes(0) = std::complex<double>(0.6, 0.8);
  s.phases = Vector::LinSpaced(4, 0.0, 3.0);
  s.ramp_rate = 2.0;
  const NonadiabaticState t = NonadiabaticState::unpack(s.flow.g, s.pack(), 4, 2.0);
  CHECK(t.amplitudes == s.amplitudes);
  CHECK(t.phases == s.phases);
  CHECK(t.flow.h_int == s.flow.h_int);
}

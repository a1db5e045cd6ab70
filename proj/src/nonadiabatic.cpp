#include "cflow/nonadiabatic.hpp"

#include "cflow/errors.hpp"

#include <cassert>
#include <cmath>
#include <limits>
#include <sstream>

namespace cflow {

namespace {

// Levels holding at least this much probability define the fastest phase the
// integrator must resolve; everything below rides along error-controlled.
constexpr double kParticipationFloor = 1e-10;

void augmented_rhs(int n, double v, double gap_floor, double g, const double* y, double* dy) {
  flow_rhs_packed(n, y, dy, gap_floor, g);

  const Eigen::Map<const Vector> energies(y, n);
  const Eigen::Map<const Matrix> h(y + n, n, n);
  const int off = FlowState::packed_size(n);
  const Eigen::Map<const Vector> a_re(y + off, n);
  const Eigen::Map<const Vector> a_im(y + off + n, n);
  const Eigen::Map<const Vector> theta(y + off + 2 * n, n);

  // Same connection as the flow block; denominators were already gap-guarded.
  Matrix w = Matrix::Zero(n, n);
  for (int m = 0; m < n; ++m) {
    for (int k = 0; k < n; ++k) {
      if (k == m || h(k, m) == 0.0) continue;
      w(k, m) = h(k, m) / (energies(k) - energies(m));
    }
  }
  assert(w.diagonal().isZero(0.0));  // zero diagonal connection by normalization

  // d alpha = e^{i theta} .* (W * (alpha .* e^{-i theta}))
  Vector cos_t(n), sin_t(n);
  for (int m = 0; m < n; ++m) {
    cos_t(m) = std::cos(theta(m));
    sin_t(m) = std::sin(theta(m));
  }
  const Vector z_re = a_re.cwiseProduct(cos_t) + a_im.cwiseProduct(sin_t);
  const Vector z_im = a_im.cwiseProduct(cos_t) - a_re.cwiseProduct(sin_t);
  const Vector s_re = w * z_re;
  const Vector s_im = w * z_im;

  Eigen::Map<Vector> d_re(dy + off, n);
  Eigen::Map<Vector> d_im(dy + off + n, n);
  Eigen::Map<Vector> d_theta(dy + off + 2 * n, n);
  d_re = s_re.cwiseProduct(cos_t) - s_im.cwiseProduct(sin_t);
  d_im = s_im.cwiseProduct(cos_t) + s_re.cwiseProduct(sin_t);
  d_theta = energies / v;
}

double oscillation_cap(int n, double v, const Vector& y) {
  const int off = FlowState::packed_size(n);
  double e_ref = 0.0;
  for (int m = 0; m < n; ++m) {
    const double p = y(off + m) * y(off + m) + y(off + n + m) * y(off + n + m);
    if (p >= kParticipationFloor) e_ref = std::max(e_ref, std::abs(y(m)));
  }
  if (e_ref == 0.0) return std::numeric_limits<double>::infinity();
  return std::abs(v) * M_PI / (4.0 * e_ref);
}

}  // namespace

Vector NonadiabaticState::pack() const {
  const int n = size();
  Vector y(packed_size(n));
  y.head(FlowState::packed_size(n)) = flow.pack();
  const int off = FlowState::packed_size(n);
  y.segment(off, n) = amplitudes.real();
  y.segment(off + n, n) = amplitudes.imag();
  y.segment(off + 2 * n, n) = phases;
  return y;
}

NonadiabaticState NonadiabaticState::unpack(double g, const Vector& y, int n, double ramp_rate) {
  NonadiabaticState s;
  s.flow = FlowState::unpack(g, y.head(FlowState::packed_size(n)), n);
  const int off = FlowState::packed_size(n);
  s.amplitudes.resize(n);
  s.amplitudes.real() = y.segment(off, n);
  s.amplitudes.imag() = y.segment(off + n, n);
  s.phases = y.segment(off + 2 * n, n);
  s.ramp_rate = ramp_rate;
  return s;
}

NonadiabaticDerivative nonadiabatic_rhs(const NonadiabaticState& state, double gap_floor) {
  if (state.ramp_rate == 0.0) throw ZeroRampRateError();
  const int n = state.size();
  const Vector y = state.pack();
  Vector dy(NonadiabaticState::packed_size(n));
  augmented_rhs(n, state.ramp_rate, gap_floor, state.flow.g, y.data(), dy.data());

  NonadiabaticDerivative d;
  d.flow.d_energies = dy.head(n);
  d.flow.d_h_int = Eigen::Map<const Matrix>(dy.data() + n, n, n);
  d.flow.d_overlaps = Eigen::Map<const Matrix>(dy.data() + n + n * n, n, n);
  const int off = FlowState::packed_size(n);
  d.d_amplitudes.resize(n);
  d.d_amplitudes.real() = dy.segment(off, n);
  d.d_amplitudes.imag() = dy.segment(off + n, n);
  d.d_phases = dy.segment(off + 2 * n, n);
  return d;
}

RampTrajectory evolve_ramp(const ModelSpec& model, double ramp_rate, double g_max,
                           int init_level, const std::vector<double>& sample_grid,
                           const IntegratorConfig& config, double gap_floor) {
  model.validate();
  if (ramp_rate == 0.0) throw ZeroRampRateError();
  if (ramp_rate < 0.0) {
    throw Error("nonadiabatic: evolve_ramp handles increasing ramps (v > 0); chain intervals otherwise");
  }
  const int n = model.n_states;
  if (init_level < 0 || init_level >= n) {
    std::ostringstream os;
    os << "nonadiabatic: init_level " << init_level << " outside 0.." << n - 1;
    throw Error(os.str());
  }
  if (g_max < 0.0) throw Error("nonadiabatic: g_max must be >= 0");

  std::vector<double> targets;
  for (double s : sample_grid) {
    if (s < 0.0 || s > g_max) throw Error("nonadiabatic: sample grid must lie in [0, g_max]");
    targets.push_back(s);
  }
  if (targets.empty() || targets.back() < g_max) targets.push_back(g_max);

  NonadiabaticState init;
  init.flow = model.initial_state();
  init.amplitudes = ComplexVector::Zero(n);
  init.amplitudes(init_level) = 1.0;
  init.phases = Vector::Zero(n);
  init.ramp_rate = ramp_rate;

  auto rhs = [n, ramp_rate, gap_floor](double g, const Vector& y, Vector& dy) {
    augmented_rhs(n, ramp_rate, gap_floor, g, y.data(), dy.data());
  };
  auto cap = [n, ramp_rate](double, const Vector& y) {
    return oscillation_cap(n, ramp_rate, y);
  };
  const std::vector<Vector> packed = integrate(rhs, init.pack(), 0.0, targets, config, cap);

  RampTrajectory traj;
  traj.samples.reserve(targets.size());
  const int off = FlowState::packed_size(n);
  for (std::size_t k = 0; k < targets.size(); ++k) {
    RampSample sample;
    sample.g = targets[k];
    sample.t = targets[k] / ramp_rate;
    sample.probabilities = packed[k].segment(off, n).array().square().matrix() +
                           packed[k].segment(off + n, n).array().square().matrix();
    sample.phases = packed[k].segment(off + 2 * n, n);
    traj.samples.push_back(std::move(sample));
  }
  traj.final_flow = FlowState::unpack(targets.back(), packed.back().head(off), n);
  return traj;
}

}  // namespace cflow

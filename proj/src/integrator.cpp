#include "cflow/integrator.hpp"

#include "cflow/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cflow {

namespace {

// Dormand-Prince 5(4) tableau. The b row equals the last a row (the 5th-order
// result is stage 7's argument); e holds b5 - b4 for the embedded estimate.
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double a71 = 35.0 / 384.0, a73 = 500.0 / 1113.0, a74 = 125.0 / 192.0,
                 a75 = -2187.0 / 6784.0, a76 = 11.0 / 84.0;
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

constexpr double kSafety = 0.9;
constexpr double kMinFactor = 0.2;
constexpr double kMaxFactor = 5.0;
constexpr double kMinStep = 1e-14;
constexpr double kErrExponent = 1.0 / 5.0;

}  // namespace

void IntegratorConfig::validate() const {
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) {
    throw Error("integrator: tolerances must be positive");
  }
  if (!(initial_step > 0.0) || !(max_step >= initial_step)) {
    throw Error("integrator: need max_step >= initial_step > 0");
  }
  if (max_steps <= 0) {
    throw Error("integrator: max_steps must be positive");
  }
}

void dp45_step(const RhsFn& rhs, double g, const Vector& y, double h,
               Vector& y_out, Vector& err_out) {
  const auto n = y.size();
  Vector k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), tmp(n);

  rhs(g, y, k1);
  tmp = y + h * (a21 * k1);
  rhs(g + c2 * h, tmp, k2);
  tmp = y + h * (a31 * k1 + a32 * k2);
  rhs(g + c3 * h, tmp, k3);
  tmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
  rhs(g + c4 * h, tmp, k4);
  tmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
  rhs(g + c5 * h, tmp, k5);
  tmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
  rhs(g + h, tmp, k6);
  y_out = y + h * (a71 * k1 + a73 * k3 + a74 * k4 + a75 * k5 + a76 * k6);
  rhs(g + h, y_out, k7);

  err_out = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
}

namespace {

double error_norm(const Vector& err, const Vector& y_old, const Vector& y_new,
                  double rel_tol, double abs_tol) {
  double sum = 0.0;
  const auto n = err.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double scale =
        std::max(abs_tol, rel_tol * std::max(std::abs(y_old(i)), std::abs(y_new(i))));
    const double r = err(i) / scale;
    sum += r * r;
  }
  return std::sqrt(sum / static_cast<double>(n));
}

}  // namespace

std::vector<Vector> integrate(const RhsFn& rhs, const Vector& y0, double g0,
                              const std::vector<double>& g_targets,
                              const IntegratorConfig& config, const StepCapFn& step_cap) {
  config.validate();
  if (g_targets.empty()) throw Error("integrator: no targets given");
  for (std::size_t i = 0; i < g_targets.size(); ++i) {
    if (i == 0 && g_targets[0] < g0) {
      throw Error("integrator: first target must be >= the start coupling");
    }
    if (i > 0 && !(g_targets[i] > g_targets[i - 1])) {
      throw Error("integrator: targets must be strictly increasing");
    }
  }

  std::vector<Vector> out;
  out.reserve(g_targets.size());

  Vector y = y0;
  Vector y_new(y.size()), err(y.size());
  double g = g0;
  double h_ctrl = std::min(config.initial_step, config.max_step);
  long attempts = 0;

  for (double target : g_targets) {
    while (g < target) {
      double h = std::min(h_ctrl, config.max_step);
      if (step_cap) h = std::min(h, step_cap(g, y));
      // clip onto the target, stretching up to 1% so float rounding can never
      // leave an unsteppable sliver behind
      const double remaining = target - g;
      const bool hit = 1.01 * h >= remaining;
      if (hit) h = remaining;
      if (h < kMinStep) throw StepUnderflowError(h, g);
      if (++attempts > config.max_steps) throw StepLimitError(config.max_steps, g);

      dp45_step(rhs, g, y, h, y_new, err);
      const double en = error_norm(err, y, y_new, config.rel_tol, config.abs_tol);

      double factor = (en == 0.0) ? kMaxFactor
                                  : kSafety * std::pow(en, -kErrExponent);
      if (en <= 1.0) {
        g = hit ? target : g + h;
        y.swap(y_new);
        h_ctrl = h * std::clamp(factor, kMinFactor, kMaxFactor);
      } else {
        h_ctrl = h * std::clamp(factor, kMinFactor, 1.0);  // shrink only on reject
      }
    }
    out.push_back(y);
  }
  return out;
}

}  // namespace cflow

#pragma once

#include "cflow/basis.hpp"

#include <functional>
#include <vector>

namespace cflow {

struct IntegratorConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double initial_step = 1e-3;
  double max_step = 0.05;
  long max_steps = 10'000'000;

  void validate() const;  // throws Error on violation
};

// dy/dg = rhs(g, y); rhs fills dy (same length as y).
using RhsFn = std::function<void(double g, const Vector& y, Vector& dy)>;

// Optional state-dependent ceiling on the step size (return +inf for none).
using StepCapFn = std::function<double(double g, const Vector& y)>;

// One Dormand-Prince 5(4) step of size h from (g, y): writes the 5th-order
// solution into y_out and the embedded error estimate into err_out.
// Exposed so tests can verify the method's order with fixed steps.
void dp45_step(const RhsFn& rhs, double g, const Vector& y, double h,
               Vector& y_out, Vector& err_out);

// Adaptive integration from (g0, y0) through strictly increasing g_targets,
// returning the state at each target. Steps are clipped so every target is
// landed on exactly (no interpolation). Component error scale is
// max(abs_tol, rel_tol * |y_i|); step factor clamped to [0.2, 5.0].
//
// Errors: StepLimitError (max_steps attempts), StepUnderflowError (required
// step < 1e-14); exceptions thrown by rhs propagate unchanged.
std::vector<Vector> integrate(const RhsFn& rhs, const Vector& y0, double g0,
                              const std::vector<double>& g_targets,
                              const IntegratorConfig& config,
                              const StepCapFn& step_cap = nullptr);

}  // namespace cflow

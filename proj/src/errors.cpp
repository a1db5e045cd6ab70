#include "cflow/errors.hpp"

#include <sstream>

namespace cflow {

namespace {

std::string near_degeneracy_message(int i, int k, double gap, double gap_floor, double g) {
  std::ostringstream os;
  os << "flow: near-degenerate coupled pair (i=" << i << ", k=" << k << "): |E_i - E_k| = "
     << gap << " < gap_floor = " << gap_floor << " at g = " << g;
  return os.str();
}

}  // namespace

NearDegeneracyError::NearDegeneracyError(int i, int k, double gap, double gap_floor, double g)
    : Error(near_degeneracy_message(i, k, gap, gap_floor, g)), i_(i), k_(k), gap_(gap) {}

StepLimitError::StepLimitError(long max_steps, double g)
    : Error([&] {
        std::ostringstream os;
        os << "integrator: step limit exceeded (max_steps = " << max_steps << ") at g = " << g;
        return os.str();
      }()) {}

StepUnderflowError::StepUnderflowError(double h, double g)
    : Error([&] {
        std::ostringstream os;
        os << "integrator: step size underflow (h = " << h << " < 1e-14) at g = " << g;
        return os.str();
      }()) {}

ChainMismatchError::ChainMismatchError(double g)
    : Error([&] {
        std::ostringstream os;
        os << "models: dwp_initial requires the AHO state at g = 0.5, got g = " << g;
        return os.str();
      }()) {}

ZeroRampRateError::ZeroRampRateError()
    : Error("nonadiabatic: ramp rate v must be nonzero") {}

NoConvergenceError::NoConvergenceError(int sweeps, double off_norm)
    : Error([&] {
        std::ostringstream os;
        os << "oracle: jacobi_diagonalize did not converge in " << sweeps
           << " sweeps (off-diagonal norm " << off_norm << ")";
        return os.str();
      }()) {}

UnsupportedOperatorError::UnsupportedOperatorError(int power)
    : Error([&] {
        std::ostringstream os;
        os << "basis: x_power_matrix has no closed form for power " << power
           << " (supported: 1, 2, 4)";
        return os.str();
      }()) {}

}  // namespace cflow

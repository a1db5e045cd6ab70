#include "cflow/basis.hpp"

#include "cflow/errors.hpp"

#include <cmath>
#include <sstream>

namespace cflow {

void BasisConfig::validate() const {
  if (n_states < 2) {
    std::ostringstream os;
    os << "basis: n_states must be >= 2, got " << n_states;
    throw Error(os.str());
  }
  if (x_grid) {
    const auto& xs = *x_grid;
    for (std::size_t i = 1; i < xs.size(); ++i) {
      if (!(xs[i] > xs[i - 1])) {
        throw Error("basis: x_grid must be strictly increasing");
      }
    }
  }
}

Vector harmonic_energies(const BasisConfig& config) {
  config.validate();
  const int n = config.n_states;
  Vector e(n);
  for (int i = 0; i < n; ++i) e(i) = i + 0.5;
  return e;
}

SymMatrix x_power_matrix(int power, const BasisConfig& config) {
  config.validate();
  const int n = config.n_states;
  SymMatrix m = SymMatrix::Zero(n, n);

  auto set = [&m, n](int i, int j, double v) {
    if (i < n && j < n) {
      m(i, j) = v;
      m(j, i) = v;
    }
  };

  // Ladder-operator closed forms, x = (a + a^dagger)/sqrt(2). Only the listed
  // bands are nonzero; everything else stays an exact 0.0 (parity and range
  // selection rules rely on this).
  switch (power) {
    case 1:
      for (int k = 0; k < n; ++k) {
        set(k, k + 1, std::sqrt((k + 1) / 2.0));
      }
      break;
    case 2:
      for (int k = 0; k < n; ++k) {
        set(k, k, (2.0 * k + 1.0) / 2.0);
        set(k, k + 2, std::sqrt((k + 1.0) * (k + 2.0)) / 2.0);
      }
      break;
    case 4:
      for (int k = 0; k < n; ++k) {
        set(k, k, 3.0 * (2.0 * k * k + 2.0 * k + 1.0) / 4.0);
        set(k, k + 2, (2.0 * k + 3.0) * std::sqrt((k + 1.0) * (k + 2.0)) / 2.0);
        set(k, k + 4, std::sqrt((k + 1.0) * (k + 2.0) * (k + 3.0) * (k + 4.0)) / 4.0);
      }
      break;
    default:
      throw UnsupportedOperatorError(power);
  }
  return m;
}

Vector hermite_functions(int jmax, double x) {
  Vector phi(jmax + 1);
  const double pi_quarter = std::pow(M_PI, -0.25);
  phi(0) = pi_quarter * std::exp(-0.5 * x * x);
  if (jmax >= 1) phi(1) = std::sqrt(2.0) * x * phi(0);
  for (int k = 1; k < jmax; ++k) {
    phi(k + 1) = x * std::sqrt(2.0 / (k + 1)) * phi(k) - std::sqrt(k / (k + 1.0)) * phi(k - 1);
  }
  return phi;
}

double hermite_function(int j, double x) {
  if (j < 0) throw Error("basis: hermite_function level index must be >= 0");
  return hermite_functions(j, x)(j);
}

}  // namespace cflow

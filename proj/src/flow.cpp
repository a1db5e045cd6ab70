#include "cflow/flow.hpp"

#include "cflow/errors.hpp"

#include <cassert>
#include <cmath>

namespace cflow {

Vector FlowState::pack() const {
  const int n = size();
  Vector y(packed_size(n));
  y.head(n) = energies;
  Eigen::Map<Matrix>(y.data() + n, n, n) = h_int;
  Eigen::Map<Matrix>(y.data() + n + n * n, n, n) = overlaps;
  return y;
}

FlowState FlowState::unpack(double g, const Vector& y, int n) {
  FlowState s;
  s.g = g;
  s.energies = y.head(n);
  s.h_int = Eigen::Map<const Matrix>(y.data() + n, n, n);
  s.overlaps = Eigen::Map<const Matrix>(y.data() + n + n * n, n, n);
  return s;
}

bool connection_is_antisymmetric(const Vector& energies, const SymMatrix& h_int) {
  const int n = static_cast<int>(energies.size());
  for (int k = 0; k < n; ++k) {
    for (int i = k + 1; i < n; ++i) {
      const double de = energies(i) - energies(k);
      if (de == 0.0) continue;  // guarded separately by the gap floor
      const double a_ki = h_int(k, i) / de;
      const double a_ik = h_int(i, k) / (-de);
      if (a_ki != -a_ik) return false;  // exact: sign flips are lossless in IEEE
    }
  }
  return true;
}

void flow_rhs_packed(int n, const double* y, double* dy, double gap_floor, double g) {
  const Eigen::Map<const Vector> energies(y, n);
  const Eigen::Map<const Matrix> h(y + n, n, n);
  const Eigen::Map<const Matrix> c(y + n + n * n, n, n);

  // W(i,k) = H(i,k)/(E_i - E_k), zero diagonal. Guard every coupled
  // denominator before dividing.
  Matrix w(n, n);
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      if (i == k) {
        w(i, k) = 0.0;
        continue;
      }
      const double h_ik = h(i, k);
      if (h_ik == 0.0) {
        w(i, k) = 0.0;  // parity zeros stay exact zeros
        continue;
      }
      const double de = energies(i) - energies(k);
      if (std::abs(de) < gap_floor) {
        throw NearDegeneracyError(i, k, std::abs(de), gap_floor, g);
      }
      w(i, k) = h_ik / de;
    }
  }
  assert(connection_is_antisymmetric(energies, h));

  Eigen::Map<Vector> d_energies(dy, n);
  Eigen::Map<Matrix> d_h(dy + n, n, n);
  Eigen::Map<Matrix> d_c(dy + n + n * n, n, n);

  d_energies = h.diagonal();
  // Both Eq. sums collapse to S = W*H and its transpose (H symmetric), which
  // makes the mirrored result symmetric by construction.
  const Matrix s = w * h;
  d_h = s + s.transpose();
  d_c = w * c;
}

FlowDerivative flow_rhs(const FlowState& state, double gap_floor) {
  const int n = state.size();
  const Vector y = state.pack();
  Vector dy(FlowState::packed_size(n));
  flow_rhs_packed(n, y.data(), dy.data(), gap_floor, state.g);

  FlowDerivative d;
  d.d_energies = dy.head(n);
  d.d_h_int = Eigen::Map<const Matrix>(dy.data() + n, n, n);
  d.d_overlaps = Eigen::Map<const Matrix>(dy.data() + n + n * n, n, n);
  return d;
}

CoupledGap min_coupled_gap(const FlowState& state, double coupling_floor) {
  const int n = state.size();
  CoupledGap result;
  for (int i = 0; i < n; ++i) {
    for (int k = i + 1; k < n; ++k) {
      if (std::abs(state.h_int(i, k)) <= coupling_floor) continue;
      const double gap = std::abs(state.energies(i) - state.energies(k));
      if (gap < result.gap) {
        result.gap = gap;
        result.i = i;
        result.k = k;
      }
    }
  }
  return result;
}

}  // namespace cflow

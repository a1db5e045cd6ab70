#include "cflow/oracle.hpp"

#include "cflow/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cflow {

SymMatrix build_hamiltonian(ModelKind kind, double g, int n) {
  BasisConfig config{n, std::nullopt};
  config.validate();
  SymMatrix m = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = i + 0.5;
  if (kind == ModelKind::Aho) {
    m += g * x_power_matrix(4, config);
  } else {
    m += 0.5 * x_power_matrix(4, config) - g * x_power_matrix(2, config);
  }
  return m;
}

OracleResult jacobi_diagonalize(const SymMatrix& input, double sweep_tol) {
  const int n = static_cast<int>(input.rows());
  if (input.cols() != n) throw Error("oracle: matrix must be square");
  if (!input.isApprox(input.transpose(), 0.0)) {
    throw Error("oracle: matrix must be symmetric");
  }

  Matrix a = input;
  Matrix v = Matrix::Identity(n, n);
  constexpr int kMaxSweeps = 100;

  double off = 0.0;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    off = 0.0;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    }
    off = std::sqrt(2.0 * off);
    const double diag_norm = a.diagonal().norm();
    if (off < sweep_tol * diag_norm || (off == 0.0 && sweep_tol > 0.0)) {
      Vector lambda = a.diagonal();
      // Ascending sort; eigenvalue ties broken by the index of the
      // largest-magnitude eigenvector component, so output is deterministic.
      std::vector<int> order(n);
      std::iota(order.begin(), order.end(), 0);
      auto argmax = [&v, n](int col) {
        int best = 0;
        for (int r = 1; r < n; ++r) {
          if (std::abs(v(r, col)) > std::abs(v(best, col))) best = r;
        }
        return best;
      };
      std::stable_sort(order.begin(), order.end(), [&](int lhs, int rhs) {
        if (lambda(lhs) != lambda(rhs)) return lambda(lhs) < lambda(rhs);
        return argmax(lhs) < argmax(rhs);
      });
      OracleResult result;
      result.eigenvalues.resize(n);
      result.eigenvectors.resize(n, n);
      for (int k = 0; k < n; ++k) {
        result.eigenvalues(k) = lambda(order[k]);
        result.eigenvectors.col(k) = v.col(order[k]);
      }
      return result;
    }

    // One cyclic sweep of plane rotations (Rutishauser update form).
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (int r = 0; r < n; ++r) {
          if (r != p && r != q) {
            const double arp = a(r, p);
            const double arq = a(r, q);
            a(r, p) = arp - s * (arq + tau * arp);
            a(r, q) = arq + s * (arp - tau * arq);
            a(p, r) = a(r, p);
            a(q, r) = a(r, q);
          }
          const double vrp = v(r, p);
          const double vrq = v(r, q);
          v(r, p) = vrp - s * (vrq + tau * vrp);
          v(r, q) = vrq + s * (vrp - tau * vrq);
        }
      }
    }
  }
  throw NoConvergenceError(kMaxSweeps, off);
}

}  // namespace cflow

#include "support/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace testsupport {

std::vector<double> orthonormal_hermite(int kmax, double x) {
  std::vector<double> p(kmax + 1);
  p[0] = std::pow(M_PI, -0.25);
  if (kmax >= 1) p[1] = std::sqrt(2.0) * x * p[0];
  for (int k = 1; k < kmax; ++k) {
    p[k + 1] = x * std::sqrt(2.0 / (k + 1)) * p[k] - std::sqrt(k / (k + 1.0)) * p[k - 1];
  }
  return p;
}

namespace {

struct PnValue {
  double p;   // p_n(x)
  double dp;  // p_n'(x) = sqrt(2n) p_{n-1}(x)
};

PnValue eval_pn(int n, double x) {
  const std::vector<double> p = orthonormal_hermite(n, x);
  return {p[n], std::sqrt(2.0 * n) * p[n - 1]};
}

// Bracketed Newton (bisection fallback) for a sign-changing interval.
double root_in_bracket(int n, double lo, double hi) {
  double f_lo = eval_pn(n, lo).p;
  double f_hi = eval_pn(n, hi).p;
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if (f_lo * f_hi > 0.0) throw std::runtime_error("gauss_hermite: bracket lost a root");
  double xl = lo, xh = hi;
  if (f_lo > 0.0) std::swap(xl, xh);  // keep f(xl) < 0 < f(xh)

  double x = 0.5 * (lo + hi);
  double dx_old = std::abs(hi - lo), dx = dx_old;
  PnValue v = eval_pn(n, x);
  for (int it = 0; it < 200; ++it) {
    const bool newton_escapes =
        ((x - xh) * v.dp - v.p) * ((x - xl) * v.dp - v.p) > 0.0;
    if (newton_escapes || std::abs(2.0 * v.p) > std::abs(dx_old * v.dp)) {
      dx_old = dx;
      dx = 0.5 * (xh - xl);
      x = xl + dx;
    } else {
      dx_old = dx;
      dx = v.p / v.dp;
      x -= dx;
    }
    if (std::abs(dx) < 1e-15 * std::max(1.0, std::abs(x))) return x;
    v = eval_pn(n, x);
    (v.p < 0.0 ? xl : xh) = x;
  }
  throw std::runtime_error("gauss_hermite: root iteration did not converge");
}

}  // namespace

GaussHermite gauss_hermite(int n) {
  GaussHermite gh;
  gh.nodes.assign(n, 0.0);
  gh.weights.assign(n, 0.0);

  // Descend from above the largest root; each next root is bracketed one WKB
  // half-wavelength further down, so no Newton basin surprises at large n.
  const int half = n / 2;
  double upper = std::sqrt(2.0 * n + 1.0) + 1.0;
  for (int i = 0; i < half; ++i) {
    // local root spacing ~ pi / sqrt(2n+1-x^2); probe in sub-spacing steps
    const double wavelength =
        M_PI / std::sqrt(std::max(2.0 * n + 1.0 - upper * upper, 2.5));
    double lo = upper - 0.6 * wavelength;
    const double hi_sign = eval_pn(n, upper).p;
    for (int tries = 0; tries < 400; ++tries) {
      if (eval_pn(n, lo).p * hi_sign < 0.0) break;
      lo -= 0.45 * wavelength;
      if (tries == 399) throw std::runtime_error("gauss_hermite: failed to bracket a root");
    }
    const double z = root_in_bracket(n, lo, upper);

    const std::vector<double> p = orthonormal_hermite(n, z);
    const double w = 1.0 / (n * p[n - 1] * p[n - 1]);
    // store the symmetric pair; the loop only walks the positive half-axis
    gh.nodes[i] = -z;
    gh.nodes[n - 1 - i] = z;
    gh.weights[i] = w;
    gh.weights[n - 1 - i] = w;
    upper = z - 1e-9 * std::max(1.0, std::abs(z));
  }
  if (n % 2 == 1) {
    gh.nodes[half] = 0.0;
    const std::vector<double> p = orthonormal_hermite(n, 0.0);
    gh.weights[half] = 1.0 / (n * p[n - 1] * p[n - 1]);
  }
  return gh;
}

double x_power_element_quadrature(int i, int j, int power, const GaussHermite& gh) {
  const int kmax = std::max(i, j);
  double sum = 0.0;
  for (std::size_t q = 0; q < gh.nodes.size(); ++q) {
    const double x = gh.nodes[q];
    const std::vector<double> p = orthonormal_hermite(kmax, x);
    sum += gh.weights[q] * p[i] * p[j] * std::pow(x, power);
  }
  return sum;
}

}  // namespace testsupport

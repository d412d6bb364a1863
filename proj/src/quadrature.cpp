#include "lab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lab/errors.hpp"

namespace lab {

void tridiagonal_eigen(std::vector<double>& diag, std::vector<double>& offdiag,
                       std::vector<double>& first_components) {
  const std::size_t n = diag.size();
  if (n == 0) throw domain_error("tridiagonal_eigen: empty matrix");
  offdiag.resize(n, 0.0);
  constexpr double kTol = 1e-14;
  constexpr int kMaxSweeps = 64;

  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    while (true) {
      std::size_t m = l;
      while (m + 1 < n) {
        const double scale = std::abs(diag[m]) + std::abs(diag[m + 1]);
        if (std::abs(offdiag[m]) <= kTol * scale) break;
        ++m;
      }
      if (m == l) break;
      if (++iter > kMaxSweeps)
        throw domain_error("tridiagonal_eigen: no convergence");
      double g = (diag[l + 1] - diag[l]) / (2.0 * offdiag[l]);
      double r = std::hypot(g, 1.0);
      g = diag[m] - diag[l] + offdiag[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      for (std::size_t i = m; i-- > l;) {
        double f = s * offdiag[i];
        const double b = c * offdiag[i];
        r = std::hypot(f, g);
        offdiag[i + 1] = r;
        if (r == 0.0) {
          diag[i + 1] -= p;
          offdiag[m] = 0.0;
          break;
        }
        s = f / r;
        c = g / r;
        g = diag[i + 1] - p;
        r = (diag[i] - g) * s + 2.0 * c * b;
        p = s * r;
        diag[i + 1] = g + p;
        g = c * r - b;
        f = first_components[i + 1];
        first_components[i + 1] = s * first_components[i] + c * f;
        first_components[i] = c * first_components[i] - s * f;
      }
      if (r == 0.0 && m > l + 1) continue;
      diag[l] -= p;
      offdiag[l] = g;
      offdiag[m] = 0.0;
    }
  }

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(),
            [&](std::size_t a, std::size_t b) { return diag[a] < diag[b]; });
  std::vector<double> d2(n), z2(n);
  for (std::size_t i = 0; i < n; ++i) {
    d2[i] = diag[perm[i]];
    z2[i] = first_components[perm[i]];
  }
  diag.swap(d2);
  first_components.swap(z2);
}

QuadratureRule QuadratureRule::gauss_hermite(std::size_t order) {
  if (order < 1) throw domain_error("gauss_hermite: order must be >= 1");
  // Jacobi matrix of the probabilists' Hermite recurrence: zero diagonal,
  // off-diagonal sqrt(k).
  std::vector<double> diag(order, 0.0), off(order, 0.0), z(order, 0.0);
  for (std::size_t k = 1; k < order; ++k)
    off[k - 1] = std::sqrt(static_cast<double>(k));
  z[0] = 1.0;
  tridiagonal_eigen(diag, off, z);
  QuadratureRule rule;
  rule.nodes = std::move(diag);
  rule.weights.resize(order);
  double mass = 0.0;
  for (std::size_t i = 0; i < order; ++i) {
    rule.weights[i] = z[i] * z[i];
    mass += rule.weights[i];
  }
  for (double& w : rule.weights) w /= mass;
  return rule;
}

}  // namespace lab

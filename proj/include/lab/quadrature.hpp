#pragma once

#include <vector>

namespace lab {

// Gauss-Hermite rule in probabilists' normalization: integrates against the
// standard Gaussian measure, weights sum to 1, exact on polynomials of degree
// <= 2*order - 1.
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t order() const { return nodes.size(); }

  template <class F>
  double integrate(F&& f) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i)
      acc += weights[i] * f(nodes[i]);
    return acc;
  }

  static QuadratureRule gauss_hermite(std::size_t order);
};

// Eigenvalues (ascending) and first eigenvector components of a symmetric
// tridiagonal matrix, by implicit QL with shifts. diag/offdiag are consumed;
// first_components must come in as (1, 0, ..., 0).
void tridiagonal_eigen(std::vector<double>& diag, std::vector<double>& offdiag,
                       std::vector<double>& first_components);

}  // namespace lab

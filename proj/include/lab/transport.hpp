#pragma once

#include <span>
#include <vector>

#include "lab/quadrature.hpp"
#include "lab/report.hpp"

namespace lab {

// Weighted point cloud in R^d.
struct DiscreteMeasure {
  std::vector<std::vector<double>> points;
  std::vector<double> weights;

  DiscreteMeasure(std::vector<std::vector<double>> pts,
                  std::vector<double> wts);
  std::size_t size() const { return weights.size(); }
  std::size_t dim() const { return points.empty() ? 0 : points[0].size(); }
};

// Coupling with prescribed marginals; matrix is row-major |mu| x |nu|.
struct TransportPlan {
  std::size_t rows = 0, cols = 0;
  std::vector<double> matrix;
  double cost = 0.0;  // sum pi_ij |x_i - y_j|^2

  double at(std::size_t i, std::size_t j) const { return matrix[i * cols + j]; }
};

// LP dual certificate: psi_i + phi_j <= |x_i - y_j|^2, dual value = cost.
struct DualPotentials {
  std::vector<double> psi;  // per mu-support point
  std::vector<double> phi;  // per nu-support point
};

struct W2Result {
  double distance = 0.0;  // sqrt of optimal cost
  TransportPlan plan;
  DualPotentials duals;
};

// Quadratic optimal transport by the transportation-simplex specialization
// (northwest-corner start, cycle pivoting, Bland's rule). Sizes <= 256 x 256.
W2Result w2(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

struct RelativeEntropyResult {
  double value = 0.0;
  bool absolutely_continuous = true;  // false -> value is +infinity
};

// sum mu_i log(mu_i / nu_i) over matched support points (match tolerance
// 1e-12 per coordinate).
RelativeEntropyResult relative_entropy(const DiscreteMeasure& mu,
                                       const DiscreteMeasure& nu);

// Gauss-Hermite discretization of the standard Gaussian in dimension d <= 2.
DiscreteMeasure gaussian_grid(const QuadratureRule& rule, int dim);

// Upper bound on W_2(gamma_rule, gamma): the cost of collapsing each midpoint
// cell onto its node, delta^2 = sum_i int_{cell_i} (x - x_i)^2 dgamma,
// in closed form. Quantifies how much discretization error a discrete
// transport margin can carry.
double quantization_radius(const QuadratureRule& rule);

// W_2(mu, gamma_grid)^2 <= 2 H(mu | gamma_grid) for mu obtained by
// reweighting the quadrature Gaussian with a positive density on its nodes.
// The discrete inequality is a surrogate for the continuum statement; the
// margin is tracked across grid refinements rather than asserted exactly.
VerificationReport t2_check(std::span<const double> density,
                            const QuadratureRule& rule, int dim,
                            double tolerance = 1e-6);

// Q_s phi(x) = min_y [phi(y) + |x-y|^2 / 2s] over the grid, exact discrete
// minimization.
std::vector<double> hopf_lax(std::span<const double> phi,
                             const std::vector<std::vector<double>>& grid,
                             double s);

struct DualityGapResult {
  double best_value = 0.0;   // best int Q_1 phi dmu - int phi dnu
  double half_w2_sq = 0.0;   // (1/2) W_2^2
  double gap = 0.0;          // half_w2_sq - best_value (>= 0 up to roundoff)
};

// Kantorovich duality (1/2) W_2^2 = sup over phi; uses the LP dual potentials
// as the optimized candidate plus any supplied tables.
DualityGapResult kantorovich_duality_gap(
    const DiscreteMeasure& mu, const DiscreteMeasure& nu,
    const std::vector<std::vector<double>>& extra_phi = {});

}  // namespace lab

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lab/finite_space.hpp"
#include "lab/parallel.hpp"
#include "lab/report.hpp"

namespace lab {

// A subset A of a finite product space, held as point indices.
struct PatternSet {
  const ProductSpace* base = nullptr;
  std::vector<std::size_t> members;  // sorted, deduplicated, non-empty

  PatternSet(const ProductSpace& space, std::vector<std::size_t> member_idx);
  double probability() const;
  bool contains(std::size_t point) const;
};

// Deduplicated indicator patterns 1_{x_i != y_i}, y in A, as bit masks
// (bit i = coordinate i differs). Contains the zero mask iff x in A.
struct HullInstance {
  std::size_t dim = 0;
  std::vector<std::uint32_t> vertices;
  bool contains_zero = false;
};

HullInstance build_hull(const PatternSet& A, std::size_t x);

// Projection of the origin onto the convex hull of the vertices.
struct MinNormResult {
  std::vector<double> point;
  double distance = 0.0;
  std::vector<double> coefficients;  // convex weights aligned with vertices
  // min over vertices v of <point, v - point>; >= -1e-8 certifies optimality
  double certificate_gap = 0.0;
};

// Wolfe's minimum-norm-point algorithm over the explicit vertex list.
MinNormResult min_norm_point(const HullInstance& hull);

// d_A(x): Euclidean distance from 0 to the convex hull of the patterns.
double convex_distance(const PatternSet& A, std::size_t x);

// F_A(x) = sup_{|a|=1} d_a(x, A), evaluated at the certificate direction
// a = point/|point| of the min-norm solve; equals d_A(x).
double dual_distance(const PatternSet& A, std::size_t x);

// d_a(x, A) = min_{y in A} sum_i a_i 1_{x_i != y_i}
double weighted_hamming_to_set(const PatternSet& A, std::size_t x,
                               std::span<const double> a);

// d_A at every point of the base space (independent solves, run in parallel).
std::vector<double> convex_distance_table(const PatternSet& A,
                                          par::Mode mode = par::Mode::openmp);

// One solve per point: distance, the dual value at the certificate
// direction, and the optimality certificate gap.
struct DistanceSolve {
  double distance = 0.0;
  double dual = 0.0;
  double certificate_gap = 0.0;
};
std::vector<DistanceSolve> convex_distance_solves(
    const PatternSet& A, par::Mode mode = par::Mode::openmp);

// int e^{c d_A^2} dP <= 1/P(A), c in {1/4, 1/14}, by full enumeration.
VerificationReport convex_distance_moment(const PatternSet& A, double c,
                                          double tolerance = 1e-12,
                                          par::Mode mode = par::Mode::openmp);
VerificationReport convex_distance_moment(const PatternSet& A, double c,
                                          std::span<const double> distance_table,
                                          double tolerance = 1e-12,
                                          par::Mode mode = par::Mode::openmp);

// int e^{F_A^2/14} dP <= e^{4/(5 P(A))}
VerificationReport intermediate_moment_check(const PatternSet& A,
                                             std::span<const double> distance_table,
                                             double tolerance = 1e-12,
                                             par::Mode mode = par::Mode::openmp);

// max over x, coordinates i and replacements y_i of d_A(x)^2 - d_A(y)^2 <= 1
VerificationReport square_lipschitz_check(const PatternSet& A,
                                          std::span<const double> distance_table,
                                          double tolerance = 1e-8);

// P(|F - M| >= r) <= 4 e^{-r^2/4} for F satisfying F(x) <= F(y) + d_a(x,y);
// the hypothesis is verified by enumeration first (precondition_error with a
// witness pair on violation). M is the smallest median.
std::vector<VerificationReport> corollary_weighted_hamming(
    const ProductSpace& space, std::span<const double> F,
    std::span<const double> a, std::span<const double> r_grid,
    double tolerance = 1e-12);

// Same tail bound for a 1-Lipschitz function, convex along the embedded grid,
// of points embedded in [0,1] per factor. Lipschitz and midpoint convexity
// are certified on the discrete grid before checking.
std::vector<VerificationReport> corollary_convex_lipschitz(
    const ProductSpace& space, std::span<const double> F,
    const std::vector<std::vector<double>>& embedding,
    std::span<const double> r_grid, double tolerance = 1e-12);

// Smallest m with P(F <= m) >= 1/2.
double median(const ProductSpace& space, std::span<const double> F);

}  // namespace lab

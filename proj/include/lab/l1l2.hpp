#pragma once

#include <span>
#include <vector>

#include "lab/cube.hpp"
#include "lab/report.hpp"

namespace lab {

// Per-coordinate L^1/L^2 norms of L_i f. l1 <= l2 by Cauchy-Schwarz;
// ratio_log = log(l2/l1), taken as 0 when l2 = 0.
struct CoordinateNorms {
  double l1 = 0.0;
  double l2 = 0.0;
  double ratio_log = 0.0;
};

std::vector<CoordinateNorms> coordinate_norms(const BiasedCube& c,
                                              std::span<const double> f);

enum class L1L2Form { semigroup_form, original_form };

// semigroup_form:  Var(f) <= (2/rho) e^{4 rho} sum_i l2_i^2 / (1 + ratio_log_i)
// original_form:   ||f - mean||_2^2 <= K log(2/(p q)) sum_i l2_i^2 / (1 + ratio_log_i)
// with K defaulting to 14 at p = 1/2 and 30 otherwise. Coordinates with
// l2 = 0 contribute nothing.
VerificationReport l1l2_bound(const BiasedCube& c, std::span<const double> f,
                              L1L2Form form, double K = 0.0,
                              double tolerance = 1e-10);

// Delta_i f on the {0,1} relabeling of the cube (+1 -> 1, -1 -> 0):
// (1-p)(f(x) - f(U_i x)) when x_i = 1 and p(f(x) - f(U_i x)) when x_i = 0.
// Equals -L_i f.
CubeValues delta_operator(const BiasedCube& c, std::span<const double> f,
                          int i);

// I_i(A) = mu(x in A : flip_i(x) not in A), exact enumeration.
std::vector<double> influences(const BiasedCube& c,
                               std::span<const std::size_t> members);

struct KklResult {
  VerificationReport summed;         // alpha(1-alpha) <= 2K sum_i I_i / log(e/sqrt(2 I_i))
  VerificationReport max_influence;  // exists i with I_i >= alpha(1-alpha) log n / (8 K n)
  std::vector<double> profile;
};

// p = 1/2 only; alpha = mu(A) must be strictly between 0 and 1.
KklResult kkl_check(const BiasedCube& c, std::span<const std::size_t> members,
                    double K = 14.0, double tolerance = 1e-12);

}  // namespace lab

#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "lab/quadrature.hpp"
#include "lab/report.hpp"

namespace lab {

// 1-D test function with an explicit derivative and a Lipschitz bound.
// Validation is node-sampled: the derivative must match centered finite
// differences and stay below the bound on the quadrature nodes.
struct SmoothTestFunction {
  std::function<double(double)> value;
  std::function<double(double)> derivative;
  double lipschitz_bound = 1.0;

  void validate_on(const QuadratureRule& rule) const;
};

// P_t f(x) = int f(e^{-t} x + sqrt(1-e^{-2t}) y) dgamma(y), by quadrature in y
double ou_apply_at(const SmoothTestFunction& f, double t, double x,
                   const QuadratureRule& rule);
std::vector<double> ou_apply(const SmoothTestFunction& f, double t,
                             const QuadratureRule& rule);

// Ent_gamma(f^2) <= 2 int (f')^2 dgamma. Rules below order 16 are rejected.
VerificationReport gaussian_lsi_check(const SmoothTestFunction& f,
                                      const QuadratureRule& rule,
                                      double tolerance = 1e-8);

// int e^{lambda F} dgamma <= exp(lambda int F + lambda^2/2) per lambda, for
// |F'| <= 1 on the nodes.
std::vector<VerificationReport> herbst_mgf_check(
    const SmoothTestFunction& f, std::span<const double> lambda_grid,
    const QuadratureRule& rule, double tolerance = 1e-9);

// Empirical Monte Carlo tail vs e^{-r^2 / 2 L^2}; passes when the estimate is
// below bound + 3 binomial standard errors. samples < 10^4 rejected.
std::vector<VerificationReport> gaussian_concentration_check(
    const SmoothTestFunction& f, std::span<const double> r_grid,
    std::size_t samples, std::uint64_t seed);

// Fisher information form: int f log f <= (1/2) int (f')^2 / f for a strictly
// positive density (f is normalized against the rule internally).
VerificationReport fisher_information_check(const SmoothTestFunction& f,
                                            const QuadratureRule& rule,
                                            double tolerance = 1e-8);

// |d/dx P_t f| <= e^{-t} P_t(|f'|) at the nodes, gradient by finite
// differences of the semigroup.
VerificationReport ou_gradient_commutation_check(const SmoothTestFunction& f,
                                                 double t,
                                                 const QuadratureRule& rule,
                                                 double tolerance = 1e-6);

}  // namespace lab

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lab/parallel.hpp"
#include "lab/report.hpp"

namespace lab {

// The discrete cube {-1,+1}^n with the product Bernoulli measure mu_p^n,
// weight p on +1. Points are indexed lexicographically in (x_1,...,x_n) with
// -1 < +1, i.e. bit (n-1-i) of the index holds coordinate i.
class BiasedCube {
 public:
  BiasedCube(int n, double p);

  int n() const { return n_; }
  double p() const { return p_; }
  double q() const { return q_; }
  // rho = (p-q)/(log p - log q), extended by continuity to 1/2 at p = 1/2
  double rho() const { return rho_; }

  std::size_t size() const { return std::size_t{1} << n_; }
  double weight(std::size_t x) const {
    return pow_p_[ones(x)] * pow_q_[static_cast<std::size_t>(n_) - ones(x)];
  }
  bool is_plus(std::size_t x, int i) const { return (x >> (n_ - 1 - i)) & 1; }
  std::size_t flip(std::size_t x, int i) const {
    return x ^ (std::size_t{1} << (n_ - 1 - i));
  }
  double coordinate(std::size_t x, int i) const {
    return is_plus(x, i) ? 1.0 : -1.0;
  }

  static constexpr int kMaxN = 20;

 private:
  std::size_t ones(std::size_t x) const {
    return static_cast<std::size_t>(__builtin_popcountll(x));
  }

  int n_;
  double p_, q_, rho_;
  std::vector<double> pow_p_, pow_q_;
};

using CubeValues = std::vector<double>;

enum class DirichletRepr { generator, sum_Li, duplication };

double cube_integral(const BiasedCube& c, std::span<const double> f,
                     par::Mode mode = par::Mode::openmp);
double cube_variance(const BiasedCube& c, std::span<const double> f,
                     par::Mode mode = par::Mode::openmp);
double cube_entropy(const BiasedCube& c, std::span<const double> f,
                    par::Mode mode = par::Mode::openmp);
// L^r norm; non-integer exponents go through exp/log with a zero branch
double cube_norm(const BiasedCube& c, std::span<const double> f, double r,
                 par::Mode mode = par::Mode::openmp);

// L_i f = (conditional mean of f over coordinate i) - f
CubeValues coordinate_generator(const BiasedCube& c, std::span<const double> f,
                                int i);
// L f = sum_i L_i f
CubeValues generator(const BiasedCube& c, std::span<const double> f);

// Dirichlet form E(f,g); the three representations agree within 1e-11.
double dirichlet_form(const BiasedCube& c, std::span<const double> f,
                      std::span<const double> g,
                      DirichletRepr repr = DirichletRepr::sum_Li);

// P_t f by per-coordinate factorization: e^{tL_i} h = e^{-t} h + (1-e^{-t})
// times the conditional mean. O(n 2^n).
CubeValues semigroup_apply(const BiasedCube& c, std::span<const double> f,
                           double t);

// Test oracle: P_t f = sum_{k<=terms} t^k L^k f / k! evaluated by iterated
// application of L. Only sensible for small n and t.
CubeValues semigroup_series_oracle(const BiasedCube& c,
                                   std::span<const double> f, double t,
                                   int terms = 30);

// Ent(f^2) <= (1/rho) E(f,f)
VerificationReport lsi_check(const BiasedCube& c, std::span<const double> f,
                             double tolerance = 1e-10);

// ||P_t f||_q <= ||f||_p whenever e^{4 rho t} >= (q-1)/(p-1). Throws
// precondition_error below the threshold.
VerificationReport hypercontractivity_check(const BiasedCube& c,
                                            std::span<const double> f,
                                            double p_norm, double q_norm,
                                            double t,
                                            double tolerance = 1e-10);
// Same two norms with no threshold gate; used by the violation harness.
std::pair<double, double> hypercontractivity_norms(const BiasedCube& c,
                                                   std::span<const double> f,
                                                   double p_norm,
                                                   double q_norm, double t);

// (u^{q-1} - v^{q-1})(u - v) >= (4(q-1)/q^2) (u^{q/2} - v^{q/2})^2 with power
// maps extended oddly to negative arguments.
VerificationReport gross_convexity_check(double u, double v, double q,
                                         double tolerance = 1e-12);

// Var(f) <= E(f,f)
VerificationReport poincare_check(const BiasedCube& c,
                                  std::span<const double> f,
                                  double tolerance = 1e-10);

}  // namespace lab

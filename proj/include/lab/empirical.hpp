#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "lab/finite_space.hpp"
#include "lab/parallel.hpp"
#include "lab/report.hpp"

namespace lab {

// Z = max_k sum_i g_k(X_i) for independent X_i with finite laws and a finite
// family of tables g_k, |g_k| <= 1.
class ProcessInstance {
 public:
  // family[k][i][point] is g_k evaluated on the points of space i
  ProcessInstance(std::vector<FiniteSpace> spaces,
                  std::vector<std::vector<std::vector<double>>> family);

  std::size_t n() const { return spaces_.size(); }
  std::size_t family_size() const { return family_.size(); }
  const FiniteSpace& space(std::size_t i) const { return spaces_[i]; }
  double g(std::size_t k, std::size_t i, std::size_t point) const {
    return family_[k][i][point];
  }
  // product cardinality, saturating at 2^62
  std::size_t product_size() const { return product_size_; }
  double sup_norm() const { return sup_norm_; }

  double z_at(std::span<const std::size_t> digits) const;
  double w_at(std::span<const std::size_t> digits) const;  // max_k sum g_k^2
  void decode(std::size_t index, std::span<std::size_t> digits) const;
  double point_weight(std::span<const std::size_t> digits) const;

  static constexpr std::size_t kExactCap = std::size_t{1} << 20;

 private:
  std::vector<FiniteSpace> spaces_;
  std::vector<std::vector<std::vector<double>>> family_;
  std::size_t product_size_;
  double sup_norm_;
};

struct SupStatistics {
  double mean_z = 0.0;
  double v = 0.0;  // E(max_k sum_i g_k(X_i)^2)
  std::vector<std::pair<double, double>> tail;  // (r, P(|Z - E Z| >= r))
};

SupStatistics supremum_law_exact(const ProcessInstance& inst,
                                 std::span<const double> r_grid,
                                 par::Mode mode = par::Mode::openmp);
SupStatistics supremum_law_monte_carlo(const ProcessInstance& inst,
                                       std::span<const double> r_grid,
                                       std::size_t samples, std::uint64_t seed,
                                       par::Mode mode = par::Mode::openmp);

// E(e^{lambda Z}) <= e^{E(Z)(e^lambda - 1)} for 0 <= g <= 1, lambda >= 0.
std::vector<VerificationReport> poisson_mgf_check(
    const ProcessInstance& inst, std::span<const double> lambda_grid,
    double tolerance = 1e-10, par::Mode mode = par::Mode::openmp);

// P(Z >= E(Z) + r) <= exp(-E(Z) h(r / E(Z))), h(u) = (1+u)log(1+u) - u.
// Skipped with a note when E(Z) = 0.
std::vector<VerificationReport> poisson_tail_check(
    const ProcessInstance& inst, std::span<const double> r_grid,
    double tolerance = 1e-12, par::Mode mode = par::Mode::openmp);

// P(|Z - E Z| >= r) <= 2 exp(-min(r/16U, r^2/80V)), exact two-sided tail.
std::vector<VerificationReport> bernstein_tail_check(
    const ProcessInstance& inst, std::span<const double> r_grid,
    double tolerance = 1e-12, par::Mode mode = par::Mode::openmp);

// P(|Z - E Z| >= r) <= 3 exp(-(r/300U) log(1 + rU/V)).
std::vector<VerificationReport> talagrand_tail_check(
    const ProcessInstance& inst, std::span<const double> r_grid,
    double tolerance = 1e-12, par::Mode mode = par::Mode::openmp);

struct TruncationPair {
  double tau = 0.0;
  std::vector<std::pair<double, double>> z1_law;  // sorted (value, prob)
  std::vector<std::pair<double, double>> z2_law;
  double max_violation = 0.0;  // max of |Z - Z1| - Z2 over the sample space
};

// Z1 keeps the small summands, Z2 absorbs the truncated mass in absolute
// value; |Z - Z1| <= Z2 pointwise is verified by enumeration.
TruncationPair truncation_split(const ProcessInstance& inst, double tau,
                                par::Mode mode = par::Mode::openmp);
// The tail-combination choice tau = sqrt(4V / 5r).
double truncation_tau(double r, double v);

// V <= U E(Z) + 8 sup_k sum_i E(g_k(X_i)^2) for a centered family closed
// under negation; both hypotheses verified by enumeration first.
VerificationReport symmetrization_v_bound(const ProcessInstance& inst,
                                          double tolerance = 1e-12,
                                          par::Mode mode = par::Mode::openmp);

}  // namespace lab

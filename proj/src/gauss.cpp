#include "lab/gauss.hpp"

#include <cmath>
#include <string>

#include "lab/errors.hpp"
#include "lab/rng.hpp"

namespace lab {

namespace {

inline double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

double central_difference(const std::function<double(double)>& f, double x) {
  const double h = 6e-6 * (1.0 + std::abs(x));
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace

void SmoothTestFunction::validate_on(const QuadratureRule& rule) const {
  for (double x : rule.nodes) {
    const double d = derivative(x);
    if (std::abs(d) > lipschitz_bound + 1e-9)
      throw precondition_error(
          "SmoothTestFunction: |derivative| exceeds lipschitz_bound at node " +
          std::to_string(x));
    const double fd = central_difference(value, x);
    if (std::abs(d - fd) > 1e-6 * (1.0 + std::abs(d)))
      throw precondition_error(
          "SmoothTestFunction: derivative disagrees with finite differences "
          "at node " +
          std::to_string(x));
  }
}

double ou_apply_at(const SmoothTestFunction& f, double t, double x,
                   const QuadratureRule& rule) {
  if (t < 0.0) throw domain_error("ou_apply: negative time");
  const double decay = std::exp(-t);
  const double diffuse = std::sqrt(std::max(0.0, 1.0 - decay * decay));
  return rule.integrate(
      [&](double y) { return f.value(decay * x + diffuse * y); });
}

std::vector<double> ou_apply(const SmoothTestFunction& f, double t,
                             const QuadratureRule& rule) {
  std::vector<double> out(rule.order());
  for (std::size_t i = 0; i < rule.order(); ++i)
    out[i] = ou_apply_at(f, t, rule.nodes[i], rule);
  return out;
}

VerificationReport gaussian_lsi_check(const SmoothTestFunction& f,
                                      const QuadratureRule& rule,
                                      double tolerance) {
  if (rule.order() < 16)
    throw precondition_error("gaussian_lsi_check: quadrature order < 16");
  const double mass = rule.integrate([&](double x) {
    const double v = f.value(x);
    return v * v;
  });
  double lhs = 0.0;
  if (mass > 0.0) {
    const double flogf = rule.integrate(
        [&](double x) { return xlogx(f.value(x) * f.value(x)); });
    lhs = flogf - mass * std::log(mass);
  }
  const double rhs = 2.0 * rule.integrate([&](double x) {
    const double d = f.derivative(x);
    return d * d;
  });
  return VerificationReport::check("gaussian_lsi", lhs, rhs, tolerance);
}

std::vector<VerificationReport> herbst_mgf_check(
    const SmoothTestFunction& f, std::span<const double> lambda_grid,
    const QuadratureRule& rule, double tolerance) {
  for (double x : rule.nodes)
    if (std::abs(f.derivative(x)) > 1.0 + 1e-9)
      throw precondition_error("herbst_mgf_check: |F'| > 1 at a node");
  const double mean = rule.integrate(f.value);
  std::vector<VerificationReport> reports;
  reports.reserve(lambda_grid.size());
  for (double lambda : lambda_grid) {
    const double lhs =
        rule.integrate([&](double x) { return std::exp(lambda * f.value(x)); });
    const double rhs = std::exp(lambda * mean + 0.5 * lambda * lambda);
    reports.push_back(VerificationReport::check(
        "herbst_mgf lambda=" + std::to_string(lambda), lhs, rhs, tolerance));
  }
  return reports;
}

std::vector<VerificationReport> gaussian_concentration_check(
    const SmoothTestFunction& f, std::span<const double> r_grid,
    std::size_t samples, std::uint64_t seed) {
  if (samples < 10000)
    throw precondition_error(
        "gaussian_concentration_check: fewer than 10^4 samples");
  const double lip = f.lipschitz_bound;
  if (!(lip > 0.0))
    throw precondition_error(
        "gaussian_concentration_check: lipschitz_bound must be > 0");
  const QuadratureRule rule = QuadratureRule::gauss_hermite(64);
  const double mean = rule.integrate(f.value);
  const SeedStream rng(seed, 0x6a757374ULL);
  std::vector<VerificationReport> reports;
  for (double r : r_grid) {
    if (r < 0.0)
      throw domain_error("gaussian_concentration_check: negative r");
    std::size_t hits = 0;
    for (std::size_t s = 0; s < samples; ++s)
      if (f.value(rng.normal(s)) >= mean + r) ++hits;
    const double empirical =
        static_cast<double>(hits) / static_cast<double>(samples);
    const double bound = std::exp(-r * r / (2.0 * lip * lip));
    const double se =
        std::sqrt(empirical * (1.0 - empirical) /
                  static_cast<double>(samples));
    reports.push_back(VerificationReport::check(
        "gaussian_concentration r=" + std::to_string(r), empirical, bound,
        3.0 * se));
  }
  return reports;
}

VerificationReport fisher_information_check(const SmoothTestFunction& f,
                                            const QuadratureRule& rule,
                                            double tolerance) {
  const double mass = rule.integrate(f.value);
  if (!(mass > 0.0))
    throw domain_error("fisher_information_check: non-positive mass");
  for (double x : rule.nodes)
    if (!(f.value(x) > 0.0))
      throw domain_error("fisher_information_check: density not positive");
  const double lhs = rule.integrate([&](double x) {
                       return xlogx(f.value(x) / mass);
                     });
  const double rhs = 0.5 / mass * rule.integrate([&](double x) {
                       const double d = f.derivative(x);
                       return d * d / f.value(x);
                     });
  return VerificationReport::check("fisher_information", lhs, rhs, tolerance);
}

VerificationReport ou_gradient_commutation_check(const SmoothTestFunction& f,
                                                 double t,
                                                 const QuadratureRule& rule,
                                                 double tolerance) {
  const double decay = std::exp(-t);
  const double diffuse = std::sqrt(std::max(0.0, 1.0 - decay * decay));
  double worst_lhs = 0.0, worst_rhs = 0.0, worst_gap = -1.0 / 0.0;
  for (double x : rule.nodes) {
    const double grad = central_difference(
        [&](double u) { return ou_apply_at(f, t, u, rule); }, x);
    const double rhs = decay * rule.integrate([&](double y) {
                         return std::abs(f.derivative(decay * x + diffuse * y));
                       });
    const double gap = std::abs(grad) - rhs;
    if (gap > worst_gap) {
      worst_gap = gap;
      worst_lhs = std::abs(grad);
      worst_rhs = rhs;
    }
  }
  return VerificationReport::check("ou_gradient_commutation", worst_lhs,
                                   worst_rhs, tolerance);
}

}  // namespace lab

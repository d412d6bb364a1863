#include "lab/l1l2.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <string>

#include "lab/errors.hpp"
#include "lab/finite_space.hpp"

namespace lab {

std::vector<CoordinateNorms> coordinate_norms(const BiasedCube& c,
                                              std::span<const double> f) {
  std::vector<CoordinateNorms> out(static_cast<std::size_t>(c.n()));
  for (int i = 0; i < c.n(); ++i) {
    const CubeValues li = coordinate_generator(c, f, i);
    double m1 = 0.0, m2 = 0.0;
    for (std::size_t x = 0; x < c.size(); ++x) {
      m1 += c.weight(x) * std::abs(li[x]);
      m2 += c.weight(x) * li[x] * li[x];
    }
    CoordinateNorms& cn = out[static_cast<std::size_t>(i)];
    cn.l1 = m1;
    cn.l2 = std::sqrt(m2);
    // l1 = 0 with l2 > 0 cannot occur for finite tables
    assert(!(cn.l1 == 0.0 && cn.l2 > 0.0));
    cn.ratio_log = cn.l2 > 0.0 ? std::log(cn.l2 / cn.l1) : 0.0;
  }
  return out;
}

VerificationReport l1l2_bound(const BiasedCube& c, std::span<const double> f,
                              L1L2Form form, double K, double tolerance) {
  validate_values(c.size(), f);
  const std::vector<CoordinateNorms> norms = coordinate_norms(c, f);
  double sum = 0.0;
  for (const CoordinateNorms& cn : norms) {
    if (cn.l2 == 0.0) continue;
    sum += cn.l2 * cn.l2 / (1.0 + cn.ratio_log);
  }
  const double lhs = cube_variance(c, f, par::Mode::serial);
  if (form == L1L2Form::semigroup_form) {
    const double constant = 2.0 / c.rho() * std::exp(4.0 * c.rho());
    return VerificationReport::check("l1l2_semigroup_form", lhs,
                                     constant * sum, tolerance);
  }
  if (K <= 0.0) K = std::abs(c.p() - 0.5) < 1e-12 ? 14.0 : 30.0;
  const double constant = K * std::log(2.0 / (c.p() * c.q()));
  const double mean = cube_integral(c, f, par::Mode::serial);
  return VerificationReport::check(
      "l1l2_original_form K=" + std::to_string(K), lhs, constant * sum,
      tolerance, "centered by mean=" + std::to_string(mean));
}

CubeValues delta_operator(const BiasedCube& c, std::span<const double> f,
                          int i) {
  if (i < 0 || i >= c.n())
    throw domain_error("delta_operator: index out of range");
  validate_values(c.size(), f);
  CubeValues out(c.size());
  for (std::size_t x = 0; x < c.size(); ++x) {
    const std::size_t y = c.flip(x, i);
    const double factor = c.is_plus(x, i) ? c.q() : c.p();
    out[x] = factor * (f[x] - f[y]);
  }
  return out;
}

std::vector<double> influences(const BiasedCube& c,
                               std::span<const std::size_t> members) {
  std::vector<char> in_set(c.size(), 0);
  for (std::size_t m : members) {
    if (m >= c.size()) throw domain_error("influences: member out of range");
    in_set[m] = 1;
  }
  std::vector<double> profile(static_cast<std::size_t>(c.n()), 0.0);
  for (int i = 0; i < c.n(); ++i) {
    double acc = 0.0;
    for (std::size_t x = 0; x < c.size(); ++x)
      if (in_set[x] && !in_set[c.flip(x, i)]) acc += c.weight(x);
    profile[static_cast<std::size_t>(i)] = acc;
  }
  return profile;
}

KklResult kkl_check(const BiasedCube& c, std::span<const std::size_t> members,
                    double K, double tolerance) {
  if (std::abs(c.p() - 0.5) > 1e-12)
    throw precondition_error("kkl_check: requires p = 1/2");
  std::vector<double> profile = influences(c, members);
  double alpha = 0.0;
  {
    std::vector<char> in_set(c.size(), 0);
    for (std::size_t m : members) in_set[m] = 1;
    for (std::size_t x = 0; x < c.size(); ++x)
      if (in_set[x]) alpha += c.weight(x);
  }
  if (!(alpha > 0.0 && alpha < 1.0))
    throw precondition_error("kkl_check: mu(A) must lie strictly in (0,1)");
  double sum = 0.0;
  for (double inf : profile) {
    if (inf <= 0.0) continue;
    sum += inf / std::log(std::exp(1.0) / std::sqrt(2.0 * inf));
  }
  KklResult res;
  res.summed = VerificationReport::check("kkl_summed", alpha * (1.0 - alpha),
                                         2.0 * K * sum, tolerance);
  const double n = static_cast<double>(c.n());
  const double needed = alpha * (1.0 - alpha) * std::log(n) / (8.0 * K * n);
  const double max_inf = *std::max_element(profile.begin(), profile.end());
  res.max_influence = VerificationReport::check("kkl_max_influence", needed,
                                                max_inf, tolerance);
  res.profile = std::move(profile);
  return res;
}

}  // namespace lab

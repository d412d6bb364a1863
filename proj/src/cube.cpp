#include "lab/cube.hpp"

#include <cmath>

#include "lab/errors.hpp"
#include "lab/finite_space.hpp"

namespace lab {

namespace {

inline double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

// sign(u) |u|^r, the odd extension used by the convexity lemma
inline double odd_pow(double u, double r) {
  if (u == 0.0) return 0.0;
  return u > 0.0 ? std::pow(u, r) : -std::pow(-u, r);
}

inline void check_same_cube(std::span<const double> f,
                            std::span<const double> g) {
  if (f.size() != g.size())
    throw domain_error("dirichlet_form: cube mismatch between f and g");
}

}  // namespace

BiasedCube::BiasedCube(int n, double p) : n_(n), p_(p), q_(1.0 - p) {
  if (n < 1 || n > kMaxN) throw size_error("BiasedCube: n out of range [1,20]");
  if (!(p > 0.0 && p < 1.0)) throw domain_error("BiasedCube: p not in (0,1)");
  // (p-q)/(log p - log q) is 0/0 at p = 1/2; continuity gives 1/2 there
  rho_ = std::abs(p_ - 0.5) < 1e-12
             ? 0.5
             : (p_ - q_) / (std::log(p_) - std::log(q_));
  pow_p_.resize(static_cast<std::size_t>(n_) + 1);
  pow_q_.resize(static_cast<std::size_t>(n_) + 1);
  pow_p_[0] = pow_q_[0] = 1.0;
  for (int k = 1; k <= n_; ++k) {
    pow_p_[k] = pow_p_[k - 1] * p_;
    pow_q_[k] = pow_q_[k - 1] * q_;
  }
}

double cube_integral(const BiasedCube& c, std::span<const double> f,
                     par::Mode mode) {
  return par::reduce_sum(
      c.size(), [&](std::size_t x) { return c.weight(x) * f[x]; }, mode);
}

double cube_variance(const BiasedCube& c, std::span<const double> f,
                     par::Mode mode) {
  const double mean = cube_integral(c, f, mode);
  return par::reduce_sum(
      c.size(),
      [&](std::size_t x) {
        const double d = f[x] - mean;
        return c.weight(x) * d * d;
      },
      mode);
}

double cube_entropy(const BiasedCube& c, std::span<const double> f,
                    par::Mode mode) {
  for (double v : f)
    if (v < 0.0 || std::isnan(v))
      throw domain_error("cube_entropy: negative or NaN value");
  const double mass = cube_integral(c, f, mode);
  if (mass <= 0.0) throw domain_error("cube_entropy: f vanishes identically");
  const double flogf = par::reduce_sum(
      c.size(), [&](std::size_t x) { return c.weight(x) * xlogx(f[x]); },
      mode);
  return flogf - mass * std::log(mass);
}

double cube_norm(const BiasedCube& c, std::span<const double> f, double r,
                 par::Mode mode) {
  if (!(r > 0.0)) throw domain_error("cube_norm: exponent must be > 0");
  const double mr = par::reduce_sum(
      c.size(),
      [&](std::size_t x) {
        const double a = std::abs(f[x]);
        return a > 0.0 ? c.weight(x) * std::exp(r * std::log(a)) : 0.0;
      },
      mode);
  return mr > 0.0 ? std::exp(std::log(mr) / r) : 0.0;
}

CubeValues coordinate_generator(const BiasedCube& c, std::span<const double> f,
                                int i) {
  if (i < 0 || i >= c.n())
    throw domain_error("coordinate_generator: index out of range");
  validate_values(c.size(), f);
  CubeValues out(c.size());
  for (std::size_t x = 0; x < c.size(); ++x) {
    const std::size_t y = c.flip(x, i);
    const double plus = c.is_plus(x, i) ? f[x] : f[y];
    const double minus = c.is_plus(x, i) ? f[y] : f[x];
    out[x] = c.q() * minus + c.p() * plus - f[x];
  }
  return out;
}

CubeValues generator(const BiasedCube& c, std::span<const double> f) {
  validate_values(c.size(), f);
  CubeValues out(c.size(), 0.0);
  for (int i = 0; i < c.n(); ++i) {
    for (std::size_t x = 0; x < c.size(); ++x) {
      const std::size_t y = c.flip(x, i);
      const double plus = c.is_plus(x, i) ? f[x] : f[y];
      const double minus = c.is_plus(x, i) ? f[y] : f[x];
      out[x] += c.q() * minus + c.p() * plus - f[x];
    }
  }
  return out;
}

double dirichlet_form(const BiasedCube& c, std::span<const double> f,
                      std::span<const double> g, DirichletRepr repr) {
  check_same_cube(f, g);
  validate_values(c.size(), f);
  validate_values(c.size(), g);
  switch (repr) {
    case DirichletRepr::generator: {
      const CubeValues lg = generator(c, g);
      double acc = 0.0;
      for (std::size_t x = 0; x < c.size(); ++x)
        acc += c.weight(x) * f[x] * (-lg[x]);
      return acc;
    }
    case DirichletRepr::sum_Li: {
      double acc = 0.0;
      for (int i = 0; i < c.n(); ++i) {
        const CubeValues lf = coordinate_generator(c, f, i);
        const CubeValues lgi = coordinate_generator(c, g, i);
        for (std::size_t x = 0; x < c.size(); ++x)
          acc += c.weight(x) * lf[x] * lgi[x];
      }
      return acc;
    }
    case DirichletRepr::duplication: {
      // (1/2) sum_i int int int [f_i(x_i)-f_i(y_i)][g_i(x_i)-g_i(y_i)]
      // over the duplicated coordinate; the double integral collapses to the
      // two off-diagonal terms on a two-point factor.
      double acc = 0.0;
      for (int i = 0; i < c.n(); ++i) {
        for (std::size_t x = 0; x < c.size(); ++x) {
          const std::size_t y = c.flip(x, i);
          const double wy = c.is_plus(y, i) ? c.p() : c.q();
          acc += 0.5 * c.weight(x) * wy * (f[x] - f[y]) * (g[x] - g[y]);
        }
      }
      return acc;
    }
  }
  return 0.0;
}

CubeValues semigroup_apply(const BiasedCube& c, std::span<const double> f,
                           double t) {
  if (t < 0.0) throw domain_error("semigroup_apply: negative time");
  validate_values(c.size(), f);
  CubeValues h(f.begin(), f.end());
  const double decay = std::exp(-t);
  const double blend = 1.0 - decay;
  for (int i = 0; i < c.n(); ++i) {
    CubeValues next(c.size());
    for (std::size_t x = 0; x < c.size(); ++x) {
      const std::size_t y = c.flip(x, i);
      const double plus = c.is_plus(x, i) ? h[x] : h[y];
      const double minus = c.is_plus(x, i) ? h[y] : h[x];
      next[x] = decay * h[x] + blend * (c.q() * minus + c.p() * plus);
    }
    h.swap(next);
  }
  return h;
}

CubeValues semigroup_series_oracle(const BiasedCube& c,
                                   std::span<const double> f, double t,
                                   int terms) {
  if (t < 0.0) throw domain_error("semigroup_series_oracle: negative time");
  CubeValues acc(f.begin(), f.end());
  CubeValues term(f.begin(), f.end());
  for (int k = 1; k <= terms; ++k) {
    term = generator(c, term);
    const double scale = t / static_cast<double>(k);
    for (std::size_t x = 0; x < c.size(); ++x) {
      term[x] *= scale;
      acc[x] += term[x];
    }
  }
  return acc;
}

VerificationReport lsi_check(const BiasedCube& c, std::span<const double> f,
                             double tolerance) {
  validate_values(c.size(), f);
  CubeValues f2(c.size());
  for (std::size_t x = 0; x < c.size(); ++x) f2[x] = f[x] * f[x];
  double lhs = 0.0;
  const double mass = cube_integral(c, f2, par::Mode::serial);
  if (mass > 0.0) {
    double flogf = 0.0;
    for (std::size_t x = 0; x < c.size(); ++x)
      flogf += c.weight(x) * xlogx(f2[x]);
    lhs = flogf - mass * std::log(mass);
  }
  const double rhs =
      dirichlet_form(c, f, f, DirichletRepr::sum_Li) / c.rho();
  return VerificationReport::check("cube_lsi", lhs, rhs, tolerance);
}

std::pair<double, double> hypercontractivity_norms(const BiasedCube& c,
                                                   std::span<const double> f,
                                                   double p_norm,
                                                   double q_norm, double t) {
  const CubeValues ptf = semigroup_apply(c, f, t);
  return {cube_norm(c, ptf, q_norm, par::Mode::serial),
          cube_norm(c, f, p_norm, par::Mode::serial)};
}

VerificationReport hypercontractivity_check(const BiasedCube& c,
                                            std::span<const double> f,
                                            double p_norm, double q_norm,
                                            double t, double tolerance) {
  if (!(p_norm > 1.0) || !(q_norm > p_norm))
    throw precondition_error("hypercontractivity: need 1 < p < q");
  if (std::exp(4.0 * c.rho() * t) < (q_norm - 1.0) / (p_norm - 1.0) - 1e-12)
    throw precondition_error(
        "hypercontractivity: t below threshold e^{4 rho t} >= (q-1)/(p-1)");
  const auto [lhs, rhs] = hypercontractivity_norms(c, f, p_norm, q_norm, t);
  return VerificationReport::check("cube_hypercontractivity", lhs, rhs,
                                   tolerance);
}

VerificationReport gross_convexity_check(double u, double v, double q,
                                         double tolerance) {
  if (!(q > 1.0)) throw domain_error("gross_convexity: q must be > 1");
  const double lhs = 4.0 * (q - 1.0) / (q * q) *
                     std::pow(odd_pow(u, q / 2.0) - odd_pow(v, q / 2.0), 2.0);
  const double rhs = (odd_pow(u, q - 1.0) - odd_pow(v, q - 1.0)) * (u - v);
  return VerificationReport::check("gross_convexity", lhs, rhs, tolerance);
}

VerificationReport poincare_check(const BiasedCube& c,
                                  std::span<const double> f,
                                  double tolerance) {
  const double lhs = cube_variance(c, f, par::Mode::serial);
  const double rhs = dirichlet_form(c, f, f, DirichletRepr::sum_Li);
  return VerificationReport::check("cube_poincare", lhs, rhs, tolerance);
}

}  // namespace lab

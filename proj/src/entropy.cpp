#include "lab/entropy.hpp"

#include <cmath>

#include "lab/errors.hpp"

namespace lab {

namespace {

inline double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

template <class WeightFn>
double integral_impl(std::size_t n, WeightFn w, std::span<const double> f,
                     par::Mode mode) {
  return par::reduce_sum(n, [&](std::size_t i) { return w(i) * f[i]; }, mode);
}

template <class WeightFn>
double entropy_impl(std::size_t n, WeightFn w, std::span<const double> f,
                    par::Mode mode) {
  for (double v : f)
    if (v < 0.0 || std::isnan(v))
      throw domain_error("entropy: negative or NaN value");
  const double mass = integral_impl(n, w, f, mode);
  if (mass <= 0.0) throw domain_error("entropy: f vanishes identically");
  const double flogf =
      par::reduce_sum(n, [&](std::size_t i) { return w(i) * xlogx(f[i]); },
                      mode);
  return flogf - mass * std::log(mass);
}

template <class WeightFn>
double variance_impl(std::size_t n, WeightFn w, std::span<const double> f,
                     par::Mode mode) {
  const double mean = integral_impl(n, w, f, mode);
  return par::reduce_sum(
      n,
      [&](std::size_t i) {
        const double d = f[i] - mean;
        return w(i) * d * d;
      },
      mode);
}

template <class WeightFn>
double duality_gap_impl(std::size_t n, WeightFn w, std::span<const double> f,
                        par::Mode mode) {
  const double ent = entropy_impl(n, w, f, mode);
  double best = -1.0 / 0.0;
  for (double N = 2.0; N <= 1048576.0; N *= 2.0) {
    const double clamp_lo = 1.0 / N;
    auto fN = [&](std::size_t i) {
      double v = f[i];
      if (v < clamp_lo) v = clamp_lo;
      if (v > N) v = N;
      return v;
    };
    const double massN =
        par::reduce_sum(n, [&](std::size_t i) { return w(i) * fN(i); }, mode);
    const double log_massN = std::log(massN);
    // int f g with g = log(f_N / int f_N); int e^g = 1 so g is feasible
    const double value = par::reduce_sum(
        n,
        [&](std::size_t i) {
          return f[i] > 0.0 ? w(i) * f[i] * (std::log(fN(i)) - log_massN) : 0.0;
        },
        mode);
    if (value > best) best = value;
  }
  return ent - best;
}

}  // namespace

double integral(const FiniteSpace& s, std::span<const double> f,
                par::Mode mode) {
  return integral_impl(s.size(), [&](std::size_t i) { return s.weight(i); }, f,
                       mode);
}
double integral(const ProductSpace& s, std::span<const double> f,
                par::Mode mode) {
  return integral_impl(s.size(), [&](std::size_t i) { return s.weight(i); }, f,
                       mode);
}

double entropy(const FiniteSpace& s, std::span<const double> f,
               par::Mode mode) {
  return entropy_impl(s.size(), [&](std::size_t i) { return s.weight(i); }, f,
                      mode);
}
double entropy(const ProductSpace& s, std::span<const double> f,
               par::Mode mode) {
  return entropy_impl(s.size(), [&](std::size_t i) { return s.weight(i); }, f,
                      mode);
}

double variance(const FiniteSpace& s, std::span<const double> f,
                par::Mode mode) {
  return variance_impl(s.size(), [&](std::size_t i) { return s.weight(i); }, f,
                       mode);
}
double variance(const ProductSpace& s, std::span<const double> f,
                par::Mode mode) {
  return variance_impl(s.size(), [&](std::size_t i) { return s.weight(i); }, f,
                       mode);
}

double entropy_duality_gap(const FiniteSpace& s, std::span<const double> f) {
  return duality_gap_impl(s.size(), [&](std::size_t i) { return s.weight(i); },
                          f, par::Mode::serial);
}
double entropy_duality_gap(const ProductSpace& s, std::span<const double> f) {
  return duality_gap_impl(s.size(), [&](std::size_t i) { return s.weight(i); },
                          f, par::Mode::openmp);
}

VerificationReport entropic_bound(const FiniteSpace& s,
                                  std::span<const double> f,
                                  std::span<const double> g, double tolerance) {
  validate_values(s.size(), f);
  validate_values(s.size(), g);
  double mass = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (f[i] < 0.0) throw domain_error("entropic_bound: f must be >= 0");
    mass += s.weight(i) * f[i];
  }
  if (std::abs(mass - 1.0) > 1e-12)
    throw domain_error("entropic_bound: f is not a density");
  double fg = 0.0, flogf = 0.0, expg = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    fg += s.weight(i) * f[i] * g[i];
    flogf += s.weight(i) * xlogx(f[i]);
    expg += s.weight(i) * std::exp(g[i]);
  }
  return VerificationReport::check("entropic_bound", fg,
                                   flogf + std::log(expg), tolerance);
}

double variational_value(const FiniteSpace& s, std::span<const double> f,
                         double c) {
  if (!(c > 0.0)) throw domain_error("variational_value: c must be > 0");
  const double logc = std::log(c);
  double acc = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double v = f[i];
    if (v < 0.0) throw domain_error("variational_value: f must be >= 0");
    acc += s.weight(i) * (xlogx(v) - v * logc - (v - c));
  }
  return acc;
}

}  // namespace lab

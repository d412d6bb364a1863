#include "lab/tensorization.hpp"

#include <cmath>
#include <limits>

#include "lab/errors.hpp"

namespace lab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

inline double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

// Conditional quantity for one slice (values of f along factor i, complement
// fixed). Zero-mass slices contribute 0 under every variant.
double slice_value(const FiniteSpace& factor, std::span<const double> slice,
                   TensorizationVariant variant) {
  const std::size_t m = factor.size();
  double mean = 0.0;
  for (std::size_t a = 0; a < m; ++a) mean += factor.weight(a) * slice[a];
  switch (variant) {
    case TensorizationVariant::entropy: {
      if (mean <= 0.0) return 0.0;
      double flogf = 0.0;
      for (std::size_t a = 0; a < m; ++a)
        flogf += factor.weight(a) * xlogx(slice[a]);
      return flogf - mean * std::log(mean);
    }
    case TensorizationVariant::efron_stein: {
      double acc = 0.0;
      for (std::size_t a = 0; a < m; ++a) {
        const double d = slice[a] - mean;
        acc += factor.weight(a) * d * d;
      }
      return acc;
    }
    case TensorizationVariant::symmetrized: {
      double acc = 0.0;
      for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = 0; b < m; ++b) {
          const double fa = slice[a], fb = slice[b];
          if (fa <= fb) continue;
          if (fb <= 0.0) return kInf;  // log gap blows up against a zero
          acc += factor.weight(a) * factor.weight(b) * (fa - fb) *
                 (std::log(fa) - std::log(fb));
        }
      }
      return acc;
    }
    case TensorizationVariant::variational: {
      if (mean <= 0.0) return 0.0;
      const double logc = std::log(mean);
      double acc = 0.0;
      for (std::size_t a = 0; a < m; ++a) {
        const double v = slice[a];
        acc += factor.weight(a) * (xlogx(v) - v * logc - (v - mean));
      }
      return acc;
    }
  }
  return 0.0;
}

}  // namespace

std::string to_string(TensorizationVariant variant) {
  switch (variant) {
    case TensorizationVariant::entropy: return "entropy";
    case TensorizationVariant::efron_stein: return "efron_stein";
    case TensorizationVariant::symmetrized: return "symmetrized";
    case TensorizationVariant::variational: return "variational";
  }
  return "?";
}

double tensorization_rhs(const ProductSpace& s, std::span<const double> f,
                         TensorizationVariant variant, par::Mode mode) {
  validate_values(s.size(), f);
  if (variant != TensorizationVariant::efron_stein) {
    for (double v : f)
      if (v < 0.0) throw domain_error("tensorization: f must be >= 0");
  }
  const std::size_t n = s.factor_count();
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const FiniteSpace& factor = s.factor(i);
    const std::size_t m = factor.size();
    const std::size_t stride = s.stride(i);
    const std::size_t block = stride * m;
    const std::size_t outer = s.size() / block;
    // slice (hi, lo) covers indices hi*block + a*stride + lo, a = 0..m-1
    total += par::reduce_sum(
        outer * stride,
        [&](std::size_t k) {
          const std::size_t hi = k / stride;
          const std::size_t lo = k % stride;
          const std::size_t base = hi * block + lo;
          double wc = 1.0;  // product of factor weights, factor i skipped
          for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            wc *= s.factor(j).weight((base / s.stride(j)) % s.factor(j).size());
          }
          if (wc == 0.0) return 0.0;
          double slice_buf[64];
          std::vector<double> slice_vec;
          double* slice = slice_buf;
          if (m > 64) {
            slice_vec.resize(m);
            slice = slice_vec.data();
          }
          for (std::size_t a = 0; a < m; ++a) slice[a] = f[base + a * stride];
          return wc * slice_value(factor, std::span<const double>(slice, m),
                                  variant);
        },
        mode);
    if (std::isinf(total)) return kInf;
  }
  return total;
}

VerificationReport tensorization_bound(const ProductSpace& s,
                                       std::span<const double> f,
                                       TensorizationVariant variant,
                                       double tolerance, par::Mode mode) {
  double lhs;
  if (variant == TensorizationVariant::efron_stein) {
    lhs = variance(s, f, mode);
  } else {
    lhs = entropy(s, f, mode);  // rejects negative and identically-zero f
  }
  const double rhs = tensorization_rhs(s, f, variant, mode);
  return VerificationReport::check("tensorization_" + to_string(variant), lhs,
                                   rhs, tolerance);
}

std::vector<Field> conditional_slices(const ProductSpace& s,
                                      std::span<const double> f,
                                      std::size_t coordinate) {
  validate_values(s.size(), f);
  if (coordinate >= s.factor_count())
    throw domain_error("conditional_slices: coordinate out of range");
  const FiniteSpace& factor = s.factor(coordinate);
  const std::size_t m = factor.size();
  const std::size_t stride = s.stride(coordinate);
  const std::size_t block = stride * m;
  const std::size_t outer = s.size() / block;
  std::vector<Field> out;
  out.reserve(outer * stride);
  for (std::size_t hi = 0; hi < outer; ++hi) {
    for (std::size_t lo = 0; lo < stride; ++lo) {
      std::vector<double> slice(m);
      for (std::size_t a = 0; a < m; ++a)
        slice[a] = f[hi * block + a * stride + lo];
      out.emplace_back(factor, std::move(slice));
    }
  }
  return out;
}

}  // namespace lab

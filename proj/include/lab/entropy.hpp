#pragma once

#include <span>

#include "lab/finite_space.hpp"
#include "lab/parallel.hpp"
#include "lab/report.hpp"

namespace lab {

// Weighted functionals shared by the finite and product spaces. All take the
// weight of point i through `w(i)` so product weights need not be
// materialized.

double integral(const FiniteSpace& s, std::span<const double> f,
                par::Mode mode = par::Mode::openmp);
double integral(const ProductSpace& s, std::span<const double> f,
                par::Mode mode = par::Mode::openmp);

// Ent_mu(f) = int f log f - (int f) log(int f), with 0 log 0 = 0.
// Requires f >= 0 and not identically zero.
double entropy(const FiniteSpace& s, std::span<const double> f,
               par::Mode mode = par::Mode::openmp);
double entropy(const ProductSpace& s, std::span<const double> f,
               par::Mode mode = par::Mode::openmp);

double variance(const FiniteSpace& s, std::span<const double> f,
                par::Mode mode = par::Mode::openmp);
double variance(const ProductSpace& s, std::span<const double> f,
                par::Mode mode = par::Mode::openmp);

// Gap between Ent(f) and the best value of int f g over the maximizer family
// g = log(f_N / int f_N), f_N = min(max(f, 1/N), N), N on a fixed grid of
// powers of two up to 2^20. Nonnegative up to roundoff.
double entropy_duality_gap(const FiniteSpace& s, std::span<const double> f);
double entropy_duality_gap(const ProductSpace& s, std::span<const double> f);

// Checks int f g <= int f log f + log int e^g for a density f.
VerificationReport entropic_bound(const FiniteSpace& s,
                                  std::span<const double> f,
                                  std::span<const double> g,
                                  double tolerance = 1e-12);

// int [f (log f - log c) - (f - c)] dmu, the integrand of the variational
// representation of entropy; minimized over c > 0 at c = int f.
double variational_value(const FiniteSpace& s, std::span<const double> f,
                         double c);

}  // namespace lab

#pragma once

#include <span>
#include <string>
#include <vector>

#include "lab/entropy.hpp"
#include "lab/finite_space.hpp"
#include "lab/report.hpp"

namespace lab {

enum class TensorizationVariant { entropy, efron_stein, symmetrized, variational };

std::string to_string(TensorizationVariant variant);

// Sum over coordinates of the conditional quantity prescribed by the variant,
// computed by exact enumeration:
//   entropy      sum_i int Ent_{mu_i}(f_i) dP
//   efron_stein  sum_i int Var_{mu_i}(f_i) dP
//   symmetrized  sum_i int (double integral over {f_i(x_i) >= f_i(y_i)} of
//                [f_i(x_i)-f_i(y_i)][log f_i(x_i)-log f_i(y_i)]) dP
//   variational  sum_i int ( int [f_i(log f_i - log c_i) - (f_i - c_i)] dmu_i ) dP
//                with c_i the conditional mean of the slice
double tensorization_rhs(const ProductSpace& s, std::span<const double> f,
                         TensorizationVariant variant,
                         par::Mode mode = par::Mode::openmp);

// lhs is Ent_P(f) (Var_P(f) for efron_stein); pass iff lhs <= rhs + tol.
VerificationReport tensorization_bound(const ProductSpace& s,
                                       std::span<const double> f,
                                       TensorizationVariant variant,
                                       double tolerance = 1e-10,
                                       par::Mode mode = par::Mode::openmp);

// The slices f_i over factor i, one per fixed complement tuple, enumerated
// lexicographically in the remaining coordinates. Slices partition the table.
std::vector<Field> conditional_slices(const ProductSpace& s,
                                      std::span<const double> f,
                                      std::size_t coordinate);

}  // namespace lab

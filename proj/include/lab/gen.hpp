#pragma once

#include <cstdint>
#include <vector>

#include "lab/convex_distance.hpp"
#include "lab/cube.hpp"
#include "lab/empirical.hpp"
#include "lab/finite_space.hpp"
#include "lab/gauss.hpp"
#include "lab/rng.hpp"

namespace lab::gen {

// Weights are kept away from zero so entropy/log terms stay finite.
FiniteSpace random_space(const SeedStream& rng, std::size_t size);

// Random factor structure with the product cardinality capped.
ProductSpace random_product_space(const SeedStream& rng,
                                  std::size_t max_factors,
                                  std::size_t max_points);

std::vector<double> random_positive_values(const SeedStream& rng,
                                           std::size_t size, double lo = 0.1,
                                           double hi = 2.0);
std::vector<double> random_values(const SeedStream& rng, std::size_t size,
                                  double lo = -1.0, double hi = 1.0);

// Subset of the uniform cube {0,1}^n; each point enters with probability
// `density`, at least one member guaranteed.
std::vector<std::size_t> random_subset(const SeedStream& rng,
                                       std::size_t space_size, double density);

// 1-Lipschitz trigonometric test function with exact derivative:
// c0 x + sum_j (a_j / w_j) sin(w_j x + phi_j), |c0| + sum |a_j| <= 1.
SmoothTestFunction random_lipschitz_function(const SeedStream& rng);

// exp(L * psi(x)) on the given nodes for a random 1-Lipschitz psi.
std::vector<double> random_log_lipschitz_density(const SeedStream& rng,
                                                 const std::vector<double>& nodes,
                                                 double log_lipschitz = 1.5);

struct ProcessOptions {
  std::size_t max_n = 10;
  std::size_t max_family = 8;
  std::size_t product_cap = 4096;
  bool nonnegative = false;
  bool centered_symmetric = false;
};

ProcessInstance random_process_instance(const SeedStream& rng,
                                        const ProcessOptions& options);

// Weighted-majority upset {x : sum_{x_i = +1} w_i >= theta}; nondegenerate.
std::vector<std::size_t> random_monotone_set(const SeedStream& rng,
                                             const BiasedCube& cube);

std::vector<std::size_t> dictator_set(const BiasedCube& cube, int coordinate);
std::vector<std::size_t> parity_set(const BiasedCube& cube);
std::vector<std::size_t> majority_set(const BiasedCube& cube);  // n odd

}  // namespace lab::gen

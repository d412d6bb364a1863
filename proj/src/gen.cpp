#include "lab/gen.hpp"

#include <cmath>

#include "lab/errors.hpp"

namespace lab::gen {

FiniteSpace random_space(const SeedStream& rng, std::size_t size) {
  std::vector<double> w(size);
  double mass = 0.0;
  for (std::size_t i = 0; i < size; ++i) {
    w[i] = rng.uniform(i, 0.2, 1.0);
    mass += w[i];
  }
  for (double& v : w) v /= mass;
  std::vector<std::string> pts(size);
  for (std::size_t i = 0; i < size; ++i) pts[i] = std::to_string(i);
  return FiniteSpace(std::move(pts), std::move(w));
}

ProductSpace random_product_space(const SeedStream& rng,
                                  std::size_t max_factors,
                                  std::size_t max_points) {
  const std::size_t nf = 1 + rng.below(0, max_factors);
  std::vector<FiniteSpace> factors;
  std::size_t total = 1;
  for (std::size_t i = 0; i < nf; ++i) {
    std::size_t size = 2 + rng.below(1000 + i, 3);  // 2..4 points per factor
    while (size > 2 && total * size > max_points) --size;
    if (total * size > max_points) break;
    total *= size;
    factors.push_back(random_space(rng.substream(i + 1), size));
  }
  if (factors.empty()) factors.push_back(random_space(rng.substream(1), 2));
  return ProductSpace(std::move(factors));
}

std::vector<double> random_positive_values(const SeedStream& rng,
                                           std::size_t size, double lo,
                                           double hi) {
  std::vector<double> v(size);
  for (std::size_t i = 0; i < size; ++i) v[i] = rng.uniform(i, lo, hi);
  return v;
}

std::vector<double> random_values(const SeedStream& rng, std::size_t size,
                                  double lo, double hi) {
  return random_positive_values(rng, size, lo, hi);
}

std::vector<std::size_t> random_subset(const SeedStream& rng,
                                       std::size_t space_size,
                                       double density) {
  std::vector<std::size_t> members;
  for (std::size_t x = 0; x < space_size; ++x)
    if (rng.uniform(x) < density) members.push_back(x);
  if (members.empty()) members.push_back(rng.below(space_size, space_size));
  return members;
}

SmoothTestFunction random_lipschitz_function(const SeedStream& rng) {
  const std::size_t waves = 1 + rng.below(0, 3);
  // budget |c0| + sum |a_j| = 1 keeps |F'| <= 1 exactly
  std::vector<double> amp(waves + 1);
  double budget = 0.0;
  for (std::size_t j = 0; j <= waves; ++j) {
    amp[j] = rng.uniform(100 + j, 0.05, 1.0);
    budget += amp[j];
  }
  for (double& a : amp) a /= budget;
  std::vector<double> freq(waves), phase(waves), sign{rng.uniform(1) < 0.5
                                                          ? -1.0
                                                          : 1.0};
  for (std::size_t j = 0; j < waves; ++j) {
    freq[j] = rng.uniform(200 + j, 0.3, 2.5);
    phase[j] = rng.uniform(300 + j, 0.0, 6.283185307179586);
  }
  const double c0 = sign[0] * amp[0];
  SmoothTestFunction f;
  f.lipschitz_bound = 1.0;
  f.value = [c0, amp, freq, phase, waves](double x) {
    double acc = c0 * x;
    for (std::size_t j = 0; j < waves; ++j)
      acc += amp[j + 1] / freq[j] * std::sin(freq[j] * x + phase[j]);
    return acc;
  };
  f.derivative = [c0, amp, freq, phase, waves](double x) {
    double acc = c0;
    for (std::size_t j = 0; j < waves; ++j)
      acc += amp[j + 1] * std::cos(freq[j] * x + phase[j]);
    return acc;
  };
  return f;
}

std::vector<double> random_log_lipschitz_density(const SeedStream& rng,
                                                 const std::vector<double>& nodes,
                                                 double log_lipschitz) {
  const SmoothTestFunction psi = random_lipschitz_function(rng);
  std::vector<double> density(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i)
    density[i] = std::exp(log_lipschitz * psi.value(nodes[i]));
  return density;
}

ProcessInstance random_process_instance(const SeedStream& rng,
                                        const ProcessOptions& options) {
  const std::size_t n = 1 + rng.below(0, options.max_n);
  std::vector<FiniteSpace> spaces;
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t size = 2 + rng.below(10 + i, 2);  // 2 or 3 points
    if (total * size > options.product_cap) size = 2;
    if (total * size > options.product_cap) break;
    total *= size;
    spaces.push_back(random_space(rng.substream(50 + i), size));
  }
  if (spaces.empty()) spaces.push_back(random_space(rng.substream(50), 2));

  std::size_t N = 1 + rng.below(1, options.max_family);
  if (options.centered_symmetric) N = std::max<std::size_t>(1, N / 2);
  std::vector<std::vector<std::vector<double>>> family;
  for (std::size_t k = 0; k < N; ++k) {
    std::vector<std::vector<double>> table(spaces.size());
    const SeedStream ks = rng.substream(1000 + k);
    for (std::size_t i = 0; i < spaces.size(); ++i) {
      table[i].resize(spaces[i].size());
      for (std::size_t p = 0; p < spaces[i].size(); ++p) {
        table[i][p] = options.nonnegative
                          ? ks.uniform(i * 8 + p, 0.0, 1.0)
                          : ks.uniform(i * 8 + p, -1.0, 1.0);
      }
      if (options.centered_symmetric) {
        double mean = 0.0;
        for (std::size_t p = 0; p < spaces[i].size(); ++p)
          mean += spaces[i].weight(p) * table[i][p];
        double peak = 0.0;
        for (std::size_t p = 0; p < spaces[i].size(); ++p) {
          table[i][p] -= mean;
          peak = std::max(peak, std::abs(table[i][p]));
        }
        if (peak > 1.0)
          for (std::size_t p = 0; p < spaces[i].size(); ++p)
            table[i][p] /= peak;
      }
    }
    family.push_back(std::move(table));
  }
  if (options.centered_symmetric) {
    const std::size_t base = family.size();
    for (std::size_t k = 0; k < base; ++k) {
      auto negated = family[k];
      for (auto& row : negated)
        for (double& v : row) v = -v;
      family.push_back(std::move(negated));
    }
  }
  return ProcessInstance(std::move(spaces), std::move(family));
}

std::vector<std::size_t> random_monotone_set(const SeedStream& rng,
                                             const BiasedCube& cube) {
  const int n = cube.n();
  for (std::uint64_t attempt = 0; attempt < 64; ++attempt) {
    const SeedStream s = rng.substream(attempt);
    std::vector<double> w(static_cast<std::size_t>(n));
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      w[static_cast<std::size_t>(i)] = s.uniform(static_cast<std::size_t>(i));
      total += w[static_cast<std::size_t>(i)];
    }
    const double theta = s.uniform(1000, 0.05, 0.95) * total;
    std::vector<std::size_t> members;
    for (std::size_t x = 0; x < cube.size(); ++x) {
      double score = 0.0;
      for (int i = 0; i < n; ++i)
        if (cube.is_plus(x, i)) score += w[static_cast<std::size_t>(i)];
      if (score >= theta) members.push_back(x);
    }
    if (!members.empty() && members.size() < cube.size()) return members;
  }
  return dictator_set(cube, 0);
}

std::vector<std::size_t> dictator_set(const BiasedCube& cube, int coordinate) {
  std::vector<std::size_t> members;
  for (std::size_t x = 0; x < cube.size(); ++x)
    if (cube.is_plus(x, coordinate)) members.push_back(x);
  return members;
}

std::vector<std::size_t> parity_set(const BiasedCube& cube) {
  // {prod_i x_i = +1}: an even number of -1 coordinates
  std::vector<std::size_t> members;
  for (std::size_t x = 0; x < cube.size(); ++x)
    if ((cube.n() - __builtin_popcountll(x)) % 2 == 0) members.push_back(x);
  return members;
}

std::vector<std::size_t> majority_set(const BiasedCube& cube) {
  if (cube.n() % 2 == 0) throw domain_error("majority_set: n must be odd");
  std::vector<std::size_t> members;
  for (std::size_t x = 0; x < cube.size(); ++x)
    if (2 * __builtin_popcountll(x) > cube.n()) members.push_back(x);
  return members;
}

}  // namespace lab::gen

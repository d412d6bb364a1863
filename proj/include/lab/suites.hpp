#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lab/parallel.hpp"
#include "lab/report.hpp"

namespace lab {

struct RunConfig {
  std::string suite = "all";
  std::uint64_t seed = 42;
  std::size_t instances = 0;  // 0 -> per-suite default
  int max_n = 0;              // 0 -> per-suite default
  double p = 0.0;             // 0 -> per-suite grid
  std::size_t samples = 0;    // Monte Carlo samples, 0 -> default
  double tol = 0.0;           // 0 -> per-check defaults
  std::string out;            // empty -> stdout
  std::string format = "json";
  par::Mode mode = par::Mode::openmp;
};

struct InstanceReport {
  std::uint64_t instance_id = 0;
  VerificationReport report;
};

struct SuiteSummary {
  std::string suite;
  std::uint64_t seed = 0;
  std::size_t instances_run = 0;
  std::size_t failures = 0;
  double min_margin = 0.0;
  double wall_seconds = 0.0;  // informational; excluded from serialized output
  std::vector<InstanceReport> reports;
};

SuiteSummary sweep_entropy(const RunConfig& config);
SuiteSummary sweep_cube(const RunConfig& config);
SuiteSummary sweep_gauss(const RunConfig& config);
SuiteSummary sweep_convex(const RunConfig& config);
SuiteSummary sweep_l1l2(const RunConfig& config);
SuiteSummary sweep_transport(const RunConfig& config);
SuiteSummary sweep_empirical(const RunConfig& config);

bool is_known_suite(const std::string& name);

// Dispatches on config.suite; "all" concatenates every suite.
SuiteSummary run_suite(const RunConfig& config);

// Deterministic serializations; reruns with identical (config, seed) are
// byte-identical, so wall time stays out of both formats.
std::string summary_to_json(const SuiteSummary& summary);
std::string summary_to_csv(const SuiteSummary& summary);

// Deterministic instance files for (kind, params, seed);
// kinds: pattern_set (n, density), measure (order, dim), process (n, N).
std::string generate_instance(const std::string& kind, std::uint64_t seed,
                              std::size_t n, double density, std::size_t N);

}  // namespace lab

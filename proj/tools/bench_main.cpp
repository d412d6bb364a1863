// Benchmark comparing the serial reference path against the OpenMP path on
// the enumeration-heavy kernels. Both paths share the blocked reduction tree,
// so results must agree bit for bit.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include "lab/convex_distance.hpp"
#include "lab/empirical.hpp"
#include "lab/entropy.hpp"
#include "lab/gen.hpp"
#include "lab/parallel.hpp"
#include "lab/rng.hpp"
#include "lab/tensorization.hpp"

namespace {

using Clock = std::chrono::steady_clock;

template <class F>
std::pair<double, double> timed(F&& body) {
  const auto start = Clock::now();
  const double value = body();
  const double seconds =
      std::chrono::duration<double>(Clock::now() - start).count();
  return {value, seconds};
}

void row(const char* name, double serial_s, double openmp_s, bool equal) {
  std::printf("%-28s %10.3f ms %10.3f ms %7.2fx   %s\n", name,
              1e3 * serial_s, 1e3 * openmp_s, serial_s / openmp_s,
              equal ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
  std::printf("%-28s %13s %13s %9s   %s\n", "kernel", "serial", "openmp",
              "speedup", "results");
  std::printf("threads available: %d\n", lab::par::max_threads());
  const lab::SeedStream rng(20240, 1);

  {
    std::vector<lab::FiniteSpace> factors(18, lab::FiniteSpace::bernoulli_pm(0.4));
    const lab::ProductSpace space(factors);
    const std::vector<double> f =
        lab::gen::random_positive_values(rng.substream(1), space.size(), 0.05,
                                         2.0);
    const auto [v1, t1] = timed([&] {
      return lab::tensorization_rhs(space, f, lab::TensorizationVariant::entropy,
                                    lab::par::Mode::serial);
    });
    const auto [v2, t2] = timed([&] {
      return lab::tensorization_rhs(space, f, lab::TensorizationVariant::entropy,
                                    lab::par::Mode::openmp);
    });
    row("tensorization 2^18", t1, t2, v1 == v2);
  }
  {
    std::vector<lab::FiniteSpace> factors(10, lab::FiniteSpace::bernoulli01(0.5));
    const lab::ProductSpace space(factors);
    const lab::PatternSet A(
        space, lab::gen::random_subset(rng.substream(2), space.size(), 0.25));
    const auto [v1, t1] = timed([&] {
      const auto table = lab::convex_distance_table(A, lab::par::Mode::serial);
      double acc = 0.0;
      for (double d : table) acc += d;
      return acc;
    });
    const auto [v2, t2] = timed([&] {
      const auto table = lab::convex_distance_table(A, lab::par::Mode::openmp);
      double acc = 0.0;
      for (double d : table) acc += d;
      return acc;
    });
    row("convex distance table n=10", t1, t2, v1 == v2);
  }
  {
    lab::gen::ProcessOptions opts;
    opts.max_n = 18;
    opts.max_family = 6;
    opts.product_cap = 1 << 18;
    const lab::ProcessInstance inst =
        lab::gen::random_process_instance(rng.substream(3), opts);
    const std::vector<double> grid{0.5, 1.0};
    const auto [v1, t1] = timed([&] {
      return lab::supremum_law_exact(inst, grid, lab::par::Mode::serial).mean_z;
    });
    const auto [v2, t2] = timed([&] {
      return lab::supremum_law_exact(inst, grid, lab::par::Mode::openmp).mean_z;
    });
    row("empirical sup 2^18", t1, t2, v1 == v2);
  }
  {
    const std::size_t samples = 4'000'000;
    auto mc = [&](lab::par::Mode mode) {
      return lab::par::reduce_sum(
                 samples,
                 [&](std::size_t s) {
                   return rng.normal(s) >= 1.0 ? 1.0 : 0.0;
                 },
                 mode) /
             static_cast<double>(samples);
    };
    const auto [v1, t1] = timed([&] { return mc(lab::par::Mode::serial); });
    const auto [v2, t2] = timed([&] { return mc(lab::par::Mode::openmp); });
    row("monte carlo tail 4e6", t1, t2, v1 == v2);
  }
  return 0;
}

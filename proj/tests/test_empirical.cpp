#include <cmath>
#include <vector>

#include <doctest.h>

#include "lab/empirical.hpp"
#include "lab/errors.hpp"
#include "lab/gen.hpp"
#include "lab/rng.hpp"

#include "oracles.hpp"

using namespace lab;

namespace {

// two fair +-1 coins, one table g(x) = x (optionally with its negation)
ProcessInstance coin_instance(bool with_negation) {
  std::vector<FiniteSpace> spaces(2, FiniteSpace::bernoulli_pm(0.5));
  std::vector<std::vector<std::vector<double>>> fam;
  fam.push_back({{-1.0, 1.0}, {-1.0, 1.0}});
  if (with_negation) fam.push_back({{1.0, -1.0}, {1.0, -1.0}});
  return ProcessInstance(std::move(spaces), std::move(fam));
}

ProcessInstance binomial_instance(std::size_t n) {
  std::vector<FiniteSpace> spaces(n, FiniteSpace::bernoulli01(0.5));
  std::vector<std::vector<std::vector<double>>> fam(1);
  fam[0].assign(n, std::vector<double>{0.0, 1.0});
  return ProcessInstance(std::move(spaces), std::move(fam));
}

}  // namespace

TEST_SUITE("empirical-sup") {

TEST_CASE("instance validation") {
  std::vector<FiniteSpace> spaces(2, FiniteSpace::bernoulli01(0.5));
  CHECK_THROWS_AS(ProcessInstance(spaces, {{{0.0, 2.0}, {0.0, 1.0}}}),
                  domain_error);
  CHECK_THROWS_AS(ProcessInstance(spaces, {{{0.0, 1.0}}}), domain_error);
  CHECK_THROWS_AS(ProcessInstance({}, {}), domain_error);
}

TEST_CASE("supremum law: frozen small instances") {
  SUBCASE("zero family") {
    std::vector<FiniteSpace> spaces(3, FiniteSpace::bernoulli01(0.5));
    std::vector<std::vector<std::vector<double>>> fam(1);
    fam[0].assign(3, std::vector<double>{0.0, 0.0});
    const ProcessInstance inst(std::move(spaces), std::move(fam));
    const std::vector<double> r{0.1, 1.0};
    const auto stats = supremum_law_exact(inst, r);
    CHECK(stats.mean_z == 0.0);
    CHECK(stats.v == 0.0);
    for (const auto& [rr, tail] : stats.tail) CHECK(tail == 0.0);
  }
  SUBCASE("two coins, g = x") {
    const ProcessInstance inst = coin_instance(false);
    const std::vector<double> r{1.0, 2.0};
    const auto stats = supremum_law_exact(inst, r);
    CHECK(stats.mean_z == doctest::Approx(0.0));
    CHECK(stats.v == doctest::Approx(2.0));
    // Z in {-2, 0, 2} with probs (1/4, 1/2, 1/4)
    CHECK(stats.tail[0].second == doctest::Approx(0.5));
    CHECK(stats.tail[1].second == doctest::Approx(0.5));
  }
  SUBCASE("adding the negation gives Z = |sum x|, E(Z) = 1") {
    const ProcessInstance inst = coin_instance(true);
    const auto stats = supremum_law_exact(inst, {});
    CHECK(stats.mean_z == doctest::Approx(1.0));
    CHECK(stats.v == doctest::Approx(2.0));
  }
  SUBCASE("exact mode size cap") {
    std::vector<FiniteSpace> spaces(22, FiniteSpace::bernoulli01(0.5));
    std::vector<std::vector<std::vector<double>>> fam(1);
    fam[0].assign(22, std::vector<double>{0.0, 1.0});
    const ProcessInstance inst(std::move(spaces), std::move(fam));
    CHECK_THROWS_AS(supremum_law_exact(inst, {}), size_error);
  }
}

TEST_CASE("monte carlo agrees with exact enumeration") {
  const SeedStream rng(81, 0);
  gen::ProcessOptions opts;
  opts.max_n = 8;
  opts.max_family = 4;
  const ProcessInstance inst = gen::random_process_instance(rng, opts);
  const std::vector<double> r{0.5, 1.0, 2.0};
  const auto exact = supremum_law_exact(inst, r);
  const std::size_t samples = 100000;
  const auto mc = supremum_law_monte_carlo(inst, r, samples, 1234);
  CHECK(std::abs(mc.mean_z - exact.mean_z) <= 0.05);
  CHECK(std::abs(mc.v - exact.v) <= 0.05);
  for (std::size_t k = 0; k < r.size(); ++k) {
    const double p = exact.tail[k].second;
    const double se = std::sqrt(std::max(p * (1.0 - p), 1e-12) /
                                static_cast<double>(samples));
    CHECK(std::abs(mc.tail[k].second - p) <= 4.0 * se + 1e-6);
  }
}

TEST_CASE("poisson MGF bound") {
  SUBCASE("lambda = 0 is equality at 1") {
    const auto reports =
        poisson_mgf_check(binomial_instance(3), std::vector<double>{0.0});
    CHECK(reports[0].lhs == doctest::Approx(1.0));
    CHECK(reports[0].rhs == doctest::Approx(1.0));
  }
  SUBCASE("constant family g = 1, n = 3") {
    std::vector<FiniteSpace> spaces(3, FiniteSpace::bernoulli01(0.5));
    std::vector<std::vector<std::vector<double>>> fam(1);
    fam[0].assign(3, std::vector<double>{1.0, 1.0});
    const ProcessInstance inst(std::move(spaces), std::move(fam));
    for (double lambda : {0.5, 1.0, 2.0}) {
      const auto reports =
          poisson_mgf_check(inst, std::vector<double>{lambda});
      CHECK(reports[0].lhs ==
            doctest::Approx(std::exp(3.0 * lambda)).epsilon(1e-12));
      CHECK(reports[0].rhs ==
            doctest::Approx(std::exp(3.0 * (std::exp(lambda) - 1.0)))
                .epsilon(1e-12));
      CHECK(reports[0].pass);
    }
  }
  SUBCASE("binomial instance against the closed-form MGF") {
    const ProcessInstance inst = binomial_instance(3);
    for (double lambda : {0.0, 1.0, 2.5, 4.0}) {
      const auto reports =
          poisson_mgf_check(inst, std::vector<double>{lambda});
      const double mgf = std::pow(0.5 + 0.5 * std::exp(lambda), 3.0);
      CHECK(reports[0].lhs == doctest::Approx(mgf).epsilon(1e-12));
      CHECK(reports[0].pass);
    }
  }
  SUBCASE("negative values rejected") {
    CHECK_THROWS_AS(
        poisson_mgf_check(coin_instance(false), std::vector<double>{1.0}),
        precondition_error);
  }
  SUBCASE("seeded nonnegative instances, margin >= -1e-10") {
    const SeedStream rng(82, 0);
    gen::ProcessOptions opts;
    opts.max_n = 8;
    opts.max_family = 6;
    opts.nonnegative = true;
    const std::vector<double> grid{0.0, 1.0, 2.0, 3.0, 4.0};
    for (std::uint64_t trial = 0; trial < 60; ++trial) {
      const ProcessInstance inst =
          gen::random_process_instance(rng.substream(trial), opts);
      for (const auto& rep : poisson_mgf_check(inst, grid))
        CHECK(rep.margin >= -1e-10);
    }
  }
}

TEST_CASE("poisson tail bound") {
  SUBCASE("r = 0 bound is 1") {
    const auto reports =
        poisson_tail_check(binomial_instance(3), std::vector<double>{0.0});
    CHECK(reports[0].rhs == doctest::Approx(1.0));
    CHECK(reports[0].pass);
  }
  SUBCASE("binomial n = 3, r = 1: exact tail 1/8") {
    const auto reports =
        poisson_tail_check(binomial_instance(3), std::vector<double>{1.0});
    CHECK(reports[0].lhs == doctest::Approx(0.125).epsilon(1e-12));
    const double u = 1.0 / 1.5;
    const double h = (1.0 + u) * std::log(1.0 + u) - u;
    CHECK(reports[0].rhs == doctest::Approx(std::exp(-1.5 * h)).epsilon(1e-12));
    CHECK(reports[0].pass);
  }
  SUBCASE("degenerate mean is skipped with a note") {
    std::vector<FiniteSpace> spaces(2, FiniteSpace::bernoulli01(0.5));
    std::vector<std::vector<std::vector<double>>> fam(1);
    fam[0].assign(2, std::vector<double>{0.0, 0.0});
    const ProcessInstance inst(std::move(spaces), std::move(fam));
    const auto reports = poisson_tail_check(inst, std::vector<double>{1.0});
    CHECK(reports[0].pass);
    CHECK(reports[0].witness.find("skipped") != std::string::npos);
  }
}

TEST_CASE("bernstein-type tail") {
  SUBCASE("r = 0 bound is 2") {
    const auto reports =
        bernstein_tail_check(coin_instance(true), std::vector<double>{0.0});
    CHECK(reports[0].rhs == doctest::Approx(2.0));
    CHECK(reports[0].pass);
  }
  SUBCASE("|sum x| instance at r = 2: zero tail vs 2e^{-1/40}") {
    const auto reports =
        bernstein_tail_check(coin_instance(true), std::vector<double>{2.0});
    CHECK(reports[0].lhs == doctest::Approx(0.0));
    CHECK(reports[0].rhs ==
          doctest::Approx(2.0 * std::exp(-1.0 / 40.0)).epsilon(1e-12));
    CHECK(reports[0].pass);
  }
  SUBCASE("seeded sweep n <= 10") {
    const SeedStream rng(83, 0);
    gen::ProcessOptions opts;
    opts.max_n = 10;
    opts.max_family = 8;
    const std::vector<double> grid{0.0, 0.5, 1.0, 2.0, 4.0};
    for (std::uint64_t trial = 0; trial < 60; ++trial) {
      const ProcessInstance inst =
          gen::random_process_instance(rng.substream(trial), opts);
      for (const auto& rep : bernstein_tail_check(inst, grid))
        CHECK(rep.pass);
    }
  }
}

TEST_CASE("final tail with constants (3, 300)") {
  SUBCASE("r = 0 bound is 3; frozen coin instance values") {
    const ProcessInstance inst = coin_instance(true);
    const auto reports =
        talagrand_tail_check(inst, std::vector<double>{0.0, 1.0, 2.0});
    CHECK(reports[0].rhs == doctest::Approx(3.0));
    // V = 2, U = 1: bound at r is 3 exp(-(r/300) log(1 + r/2))
    CHECK(reports[1].lhs == doctest::Approx(1.0));  // |Z-1| = 1 surely
    CHECK(reports[1].rhs ==
          doctest::Approx(3.0 * std::exp(-std::log(1.5) / 300.0))
              .epsilon(1e-12));
    CHECK(reports[2].lhs == doctest::Approx(0.0));
    for (const auto& rep : reports) CHECK(rep.pass);
  }
  SUBCASE("seeded sweep") {
    const SeedStream rng(84, 0);
    gen::ProcessOptions opts;
    opts.max_n = 10;
    opts.max_family = 8;
    const std::vector<double> grid{0.0, 0.5, 1.0, 2.0, 4.0, 8.0};
    for (std::uint64_t trial = 0; trial < 60; ++trial) {
      const ProcessInstance inst =
          gen::random_process_instance(rng.substream(trial), opts);
      for (const auto& rep : talagrand_tail_check(inst, grid))
        CHECK(rep.pass);
    }
  }
}

TEST_CASE("truncation split") {
  const ProcessInstance inst = coin_instance(true);
  SUBCASE("tau >= 1 keeps Z intact") {
    const auto pair = truncation_split(inst, 1.0);
    CHECK(pair.max_violation <= 0.0);
    CHECK(pair.z2_law.size() == 1);
    CHECK(pair.z2_law[0].first == 0.0);
    CHECK(pair.z2_law[0].second == doctest::Approx(1.0));
  }
  SUBCASE("tau = 1/2 moves everything into Z2") {
    const auto pair = truncation_split(inst, 0.5);
    CHECK(pair.z1_law.size() == 1);
    CHECK(pair.z1_law[0].first == 0.0);
    CHECK(pair.max_violation <= 0.0);
  }
  SUBCASE("pointwise domination on seeded instances") {
    const SeedStream rng(85, 0);
    gen::ProcessOptions opts;
    opts.max_n = 8;
    opts.max_family = 5;
    for (std::uint64_t trial = 0; trial < 40; ++trial) {
      const ProcessInstance i2 =
          gen::random_process_instance(rng.substream(trial), opts);
      const double tau = rng.substream(4000 + trial).uniform(0, 0.2, 1.2);
      CHECK(truncation_split(i2, tau).max_violation <= 1e-12);
    }
  }
  CHECK_THROWS_AS(truncation_split(inst, 0.0), domain_error);
  CHECK(truncation_tau(1.0, 2.0) ==
        doctest::Approx(std::sqrt(8.0 / 5.0)).epsilon(1e-12));
}

TEST_CASE("symmetrized variance bound") {
  SUBCASE("frozen coin instance: V = 2 <= 17") {
    const auto rep = symmetrization_v_bound(coin_instance(true));
    CHECK(rep.lhs == doctest::Approx(2.0));
    CHECK(rep.rhs == doctest::Approx(17.0));
    CHECK(rep.pass);
  }
  SUBCASE("non-centered families rejected") {
    CHECK_THROWS_AS(symmetrization_v_bound(binomial_instance(3)),
                    precondition_error);
  }
  SUBCASE("family not closed under negation rejected") {
    CHECK_THROWS_AS(symmetrization_v_bound(coin_instance(false)),
                    precondition_error);
  }
  SUBCASE("seeded centered symmetric instances") {
    const SeedStream rng(86, 0);
    gen::ProcessOptions opts;
    opts.max_n = 8;
    opts.max_family = 6;
    opts.centered_symmetric = true;
    for (std::uint64_t trial = 0; trial < 40; ++trial) {
      const ProcessInstance inst =
          gen::random_process_instance(rng.substream(trial), opts);
      CHECK(symmetrization_v_bound(inst).pass);
    }
  }
}

}  // TEST_SUITE

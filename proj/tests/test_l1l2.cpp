#include <cmath>
#include <vector>

#include <doctest.h>

#include "lab/errors.hpp"
#include "lab/gen.hpp"
#include "lab/l1l2.hpp"
#include "lab/rng.hpp"

using namespace lab;

TEST_SUITE("l1l2-influence") {

TEST_CASE("coordinate norms obey Cauchy-Schwarz; zero convention") {
  const BiasedCube c(4, 0.3);
  const SeedStream rng(61, 0);
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    const auto f = gen::random_values(rng.substream(trial), c.size(), -2.0, 2.0);
    for (const auto& cn : coordinate_norms(c, f)) {
      CHECK(cn.l1 <= cn.l2 + 1e-12);
      CHECK(cn.l1 >= 0.0);
      CHECK(cn.ratio_log >= -1e-15);
    }
  }
  for (const auto& cn : coordinate_norms(c, std::vector<double>(16, 3.0))) {
    CHECK(cn.l2 <= 1e-14);  // p + q = 1 only up to rounding at biased p
    CHECK(std::abs(cn.ratio_log) <= 1e-12);
  }
}

TEST_CASE("variance bound: frozen dictator instance") {
  const BiasedCube c(5, 0.5);
  std::vector<double> f(c.size());
  for (std::size_t x = 0; x < c.size(); ++x)
    f[x] = c.coordinate(x, 0);
  const auto rep = l1l2_bound(c, f, L1L2Form::semigroup_form);
  CHECK(rep.pass);
  CHECK(rep.lhs == doctest::Approx(1.0).epsilon(1e-12));
  // (2/rho) e^{4 rho} * 1 / (1 + 0) = 4 e^2
  CHECK(rep.rhs ==
        doctest::Approx(4.0 * std::exp(2.0)).epsilon(1e-12));
  const auto rep0 = l1l2_bound(c, std::vector<double>(c.size(), 1.0),
                               L1L2Form::semigroup_form);
  CHECK(rep0.lhs == doctest::Approx(0.0));
  CHECK(rep0.rhs == doctest::Approx(0.0));
}

TEST_CASE("both forms hold on seeded instances per (n, p) cell") {
  const SeedStream rng(62, 0);
  for (int n = 1; n <= 8; ++n) {
    for (double p : {0.1, 0.5}) {
      const BiasedCube c(n, p);
      for (std::uint64_t trial = 0; trial < 150; ++trial) {
        const auto f = gen::random_values(
            rng.substream(static_cast<std::uint64_t>(n) * 1000 +
                          (p == 0.5 ? 1 : 0) * 500 + trial),
            c.size(), -2.0, 2.0);
        const auto sg = l1l2_bound(c, f, L1L2Form::semigroup_form);
        const auto orig = l1l2_bound(c, f, L1L2Form::original_form);
        CHECK(sg.margin >= -1e-10);
        CHECK(orig.margin >= -1e-10);
        CHECK(poincare_check(c, f).pass);
      }
    }
  }
}

TEST_CASE("single-coordinate functions reduce to the Poincare-type bound") {
  const BiasedCube c(6, 0.5);
  std::vector<double> f(c.size());
  for (std::size_t x = 0; x < c.size(); ++x)
    f[x] = c.is_plus(x, 2) ? 1.9 : -0.3;
  const auto norms = coordinate_norms(c, f);
  for (std::size_t j = 0; j < norms.size(); ++j) {
    if (j == 2) {
      CHECK(std::abs(norms[j].ratio_log) <= 1e-10);  // l1 = l2
    } else {
      CHECK(norms[j].l2 <= 1e-14);
    }
  }
  const auto rep = l1l2_bound(c, f, L1L2Form::semigroup_form);
  const double constant = 2.0 / c.rho() * std::exp(4.0 * c.rho());
  CHECK(std::abs(rep.rhs - constant * norms[2].l2 * norms[2].l2) <= 1e-10);
}

TEST_CASE("delta operator bridges to the coordinate generator") {
  SUBCASE("constant vanishes; frozen two-point case") {
    const BiasedCube c(1, 0.5);
    const auto delta0 = delta_operator(c, std::vector<double>{2.0, 2.0}, 0);
    CHECK(delta0[0] == doctest::Approx(0.0));
    const std::vector<double> f{-1.0, 1.0};  // f = x_1
    const auto delta = delta_operator(c, f, 0);
    CHECK(delta[0] == doctest::Approx(-1.0));
    CHECK(delta[1] == doctest::Approx(1.0));
    const auto li = coordinate_generator(c, f, 0);
    for (std::size_t x = 0; x < 2; ++x)
      CHECK(delta[x] == doctest::Approx(-li[x]));
  }
  SUBCASE("seeded pointwise comparison, biased p") {
    const SeedStream rng(63, 0);
    for (std::uint64_t trial = 0; trial < 100; ++trial) {
      const BiasedCube c(4, trial % 2 ? 0.5 : 0.2);
      const auto f = gen::random_values(rng.substream(trial), c.size(), -1.0, 1.0);
      for (int i = 0; i < 4; ++i) {
        const auto delta = delta_operator(c, f, i);
        const auto li = coordinate_generator(c, f, i);
        for (std::size_t x = 0; x < c.size(); ++x)
          CHECK(std::abs(delta[x] + li[x]) <= 1e-12);
      }
    }
  }
  CHECK_THROWS_AS(
      delta_operator(BiasedCube(2, 0.5), std::vector<double>(4, 1.0), 2),
      domain_error);
}

TEST_CASE("influences") {
  const BiasedCube c(4, 0.5);
  SUBCASE("dictator") {
    const auto prof = influences(c, gen::dictator_set(c, 0));
    CHECK(prof[0] == doctest::Approx(0.5));
    for (int i = 1; i < 4; ++i) CHECK(prof[static_cast<std::size_t>(i)] == 0.0);
  }
  SUBCASE("full cube has no influences") {
    std::vector<std::size_t> all(c.size());
    for (std::size_t x = 0; x < c.size(); ++x) all[x] = x;
    for (double v : influences(c, all)) CHECK(v == 0.0);
  }
  SUBCASE("parity: every flip exits") {
    for (double v : influences(c, gen::parity_set(c)))
      CHECK(v == doctest::Approx(0.5));
  }
}

TEST_CASE("KKL: summed and max-influence bounds") {
  SUBCASE("dictator, n = 4, frozen arithmetic") {
    const BiasedCube c(4, 0.5);
    const auto res = kkl_check(c, gen::dictator_set(c, 0), 14.0);
    CHECK(res.summed.pass);
    // alpha(1-alpha) = 1/4 <= 2K * (1/2)/log(e/1) = 14
    CHECK(res.summed.lhs == doctest::Approx(0.25));
    CHECK(res.summed.rhs == doctest::Approx(14.0));
    CHECK(res.max_influence.pass);
    CHECK(res.max_influence.lhs ==
          doctest::Approx(0.25 * std::log(4.0) / 448.0).epsilon(1e-12));
    CHECK(res.max_influence.lhs == doctest::Approx(0.000774).epsilon(1e-3));
    CHECK(res.max_influence.rhs == doctest::Approx(0.5));
  }
  SUBCASE("parity and majority") {
    for (int n : {3, 5, 7, 9}) {
      const BiasedCube c(n, 0.5);
      CHECK(kkl_check(c, gen::parity_set(c)).summed.pass);
      CHECK(kkl_check(c, gen::parity_set(c)).max_influence.pass);
      const auto res = kkl_check(c, gen::majority_set(c));
      CHECK(res.summed.pass);
      CHECK(res.max_influence.pass);
    }
  }
  SUBCASE("seeded monotone sets, n <= 8") {
    const SeedStream rng(64, 0);
    for (std::uint64_t trial = 0; trial < 60; ++trial) {
      const BiasedCube c(2 + static_cast<int>(trial % 7), 0.5);
      const auto members = gen::random_monotone_set(rng.substream(trial), c);
      const auto res = kkl_check(c, members);
      CHECK(res.summed.pass);
      CHECK(res.max_influence.pass);
    }
  }
  SUBCASE("preconditions") {
    const BiasedCube biased(3, 0.4);
    CHECK_THROWS_AS(kkl_check(biased, gen::dictator_set(biased, 0)),
                    precondition_error);
    const BiasedCube c(3, 0.5);
    std::vector<std::size_t> all(c.size());
    for (std::size_t x = 0; x < c.size(); ++x) all[x] = x;
    CHECK_THROWS_AS(kkl_check(c, all), precondition_error);
  }
}

}  // TEST_SUITE

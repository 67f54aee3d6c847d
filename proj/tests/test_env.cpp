#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rwre/environment.hpp"
#include "rwre/errors.hpp"
#include "rwre/rng.hpp"

#include "helpers.hpp"

using namespace rwre;

namespace {
const double kE = std::exp(1.0);
}

TEST_CASE("bernoulli law produces rho / 1/rho pairs within [1/kappa, kappa]") {
  const auto law = EnvironmentLaw::bernoulli(kE, kE);
  const Environment env = gen_environment(law, 4, 7);
  REQUIRE(env.n_sites() == 4);
  for (const Site& s : env.sites) {
    const bool up = s.wp == doctest::Approx(kE).epsilon(1e-15);
    const bool down = s.wp == doctest::Approx(1.0 / kE).epsilon(1e-15);
    CHECK((up || down));
    CHECK(s.wp * s.wm == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(s.wp >= 1.0 / kE - 1e-15);
    CHECK(s.wp <= kE + 1e-15);
    CHECK(s.wm >= 1.0 / kE - 1e-15);
    CHECK(s.wm <= kE + 1e-15);
  }
}

TEST_CASE("generation is deterministic per seed") {
  const auto law = EnvironmentLaw::bernoulli(kE, kE);
  const Environment a = gen_environment(law, 1000, 7);
  const Environment b = gen_environment(law, 1000, 7);
  const Environment c = gen_environment(law, 1000, 8);
  REQUIRE(a.sites.size() == b.sites.size());
  bool identical = true, differs = false;
  for (std::size_t i = 0; i < a.sites.size(); ++i) {
    identical = identical && a.sites[i].wp == b.sites[i].wp &&
                a.sites[i].wm == b.sites[i].wm;
    differs = differs || a.sites[i].wp != c.sites[i].wp;
  }
  CHECK(identical);
  CHECK(differs);
}

TEST_CASE("empirical mean log-ratio obeys the law of large numbers") {
  const auto law = EnvironmentLaw::bernoulli(kE, kE);
  const Environment env = gen_environment(law, 1000000, 1);
  double mean = 0.0;
  for (const Site& s : env.sites) mean += std::log(s.wp / s.wm);
  mean /= static_cast<double>(env.n_sites());
  // sigma = 2 for rho = e
  CHECK(std::abs(mean) < 4.0 * 2.0 / std::sqrt(1e6));
}

TEST_CASE("law parameter validation") {
  CHECK_THROWS_AS(EnvironmentLaw::bernoulli(kE, 1.0), ConfigError);
  CHECK_THROWS_AS(EnvironmentLaw::bernoulli(0.5, kE), ConfigError);
  // kappa < rho cannot hold Condition B
  CHECK_THROWS_AS(EnvironmentLaw::bernoulli(3.0, 2.0), ConfigError);
  // custom tables: probabilities must sum to 1 and mean log-ratio must vanish
  CHECK_THROWS_AS(EnvironmentLaw::custom({{1.0, 1.0, 0.5}}, 2.0), ConfigError);
  CHECK_THROWS_AS(EnvironmentLaw::custom({{2.0, 1.0, 1.0}}, 4.0), ConfigError);
  CHECK_THROWS_AS(EnvironmentLaw::custom({{8.0, 8.0, 1.0}}, 4.0), ConfigError);
  CHECK_NOTHROW(EnvironmentLaw::custom(
      {{2.0, 1.0, 0.5}, {1.0, 2.0, 0.5}}, 4.0));
}

TEST_CASE("potential telescopes the log rate ratios") {
  SUBCASE("flat environment gives V = 0") {
    const Path p = potential(test::flat_env(10));
    for (double v : p.values) CHECK(v == 0.0);
  }
  SUBCASE("two-site example") {
    Environment env = test::flat_env(2);
    env.sites[0] = {1.0 / kE, kE};
    env.sites[1] = {kE, 1.0 / kE};
    const Path p = potential(env);
    REQUIRE(p.size() == 3);
    CHECK(p.values[0] == 0.0);
    CHECK(p.values[1] == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(p.values[2] == doctest::Approx(0.0).epsilon(1e-15));
  }
  SUBCASE("random environment matches independent cumulative sum") {
    const auto law = EnvironmentLaw::uniform_logratio(kE, kE);
    const Environment env = gen_environment(law, 50, 99);
    const Path p = potential(env);
    double acc = 0.0;
    for (std::int64_t x = 0; x < env.n_sites(); ++x) {
      CHECK(p.values[static_cast<std::size_t>(x)] == acc);
      acc += std::log(env.sites[static_cast<std::size_t>(x)].wm /
                      env.sites[static_cast<std::size_t>(x)].wp);
    }
    CHECK(p.values.back() == acc);
  }
}

TEST_CASE("brownian sampling") {
  SUBCASE("increment variance is close to sigma2 * lag") {
    const Path p = sample_brownian(1.0, 0.01, 100000, 3);
    const int lag = 100;  // lag * step = 1
    double m = 0.0, m2 = 0.0;
    std::size_t cnt = 0;
    for (std::size_t k = 0; k + lag < p.values.size(); k += lag) {
      const double d = p.values[k + lag] - p.values[k];
      m += d;
      m2 += d * d;
      ++cnt;
    }
    m /= static_cast<double>(cnt);
    const double var = m2 / static_cast<double>(cnt) - m * m;
    CHECK(var == doctest::Approx(1.0).epsilon(0.10));
  }
  SUBCASE("determinism and parameter validation") {
    const Path a = sample_brownian(1.0, 0.5, 100, 11);
    const Path b = sample_brownian(1.0, 0.5, 100, 11);
    const Path c = sample_brownian(1.0, 0.5, 100, 12);
    CHECK(a.values == b.values);
    CHECK(a.values != c.values);
    CHECK(a.values[0] == 0.0);
    CHECK_THROWS_AS(sample_brownian(1.0, 0.0, 10, 1), ConfigError);
    CHECK_THROWS_AS(sample_brownian(0.0, 0.1, 10, 1), ConfigError);
  }
  SUBCASE("longer path with the same seed extends the shorter one") {
    const Path a = sample_brownian(1.0, 0.5, 100, 11);
    const Path b = sample_brownian(1.0, 0.5, 200, 11);
    for (std::size_t i = 0; i < a.values.size(); ++i)
      CHECK(a.values[i] == b.values[i]);
  }
}

TEST_CASE("condition reports") {
  const auto bern = validate_conditions(EnvironmentLaw::bernoulli(kE, kE));
  CHECK(bern.mean_log_ratio == 0.0);
  CHECK(bern.sigma2 == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(bern.kappa_feasible);
  CHECK(bern.sinai_ok);

  // uniform log-ratio on [-1, 1]
  const auto unif =
      validate_conditions(EnvironmentLaw::uniform_logratio(kE, kE));
  CHECK(unif.mean_log_ratio == 0.0);
  CHECK(unif.sigma2 == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(unif.sinai_ok);

  // flat custom table: valid for generation, but sigma2 = 0 is flagged
  const auto flat =
      validate_conditions(EnvironmentLaw::custom({{1.0, 1.0, 1.0}}, 2.0));
  CHECK(flat.sigma2 == 0.0);
  CHECK(flat.kappa_feasible);
  CHECK_FALSE(flat.sinai_ok);
}

TEST_CASE("environment respects the ellipticity bound everywhere") {
  const auto law = EnvironmentLaw::uniform_logratio(4.0, 2.0);
  const Environment env = gen_environment(law, 20000, 5);
  for (const Site& s : env.sites) {
    CHECK(s.wp >= 1.0 / env.kappa - 1e-15);
    CHECK(s.wp <= env.kappa + 1e-15);
    CHECK(s.wm >= 1.0 / env.kappa - 1e-15);
    CHECK(s.wm <= env.kappa + 1e-15);
  }
}

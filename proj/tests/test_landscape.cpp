#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "rwre/environment.hpp"
#include "rwre/errors.hpp"
#include "rwre/landscape.hpp"

#include "helpers.hpp"

using namespace rwre;
using namespace rwre::landscape;

namespace {

Path worked_example() {
  Path p;
  p.step = 1.0;
  p.values = {0.0, -3.0, 1.0, -5.0, 2.0};
  return p;
}

}  // namespace

TEST_CASE("first stable point on the worked example") {
  const Path p = worked_example();
  CHECK(first_stable_point(p, 2.0) == 1);
  CHECK_THROWS_AS(first_stable_point(p, 10.0), HorizonError);

  Path up;
  up.values = {0.0, 1.0, 2.0, 3.0};
  CHECK(first_stable_point(up, 2.5) == 0);
}

TEST_CASE("stable points on the worked example") {
  const Path p = worked_example();
  const StableDecomposition dec = stable_points(p, 2.0, 4);
  CHECK(dec.minima == std::vector<std::int64_t>{1, 3});
  CHECK(dec.peaks == std::vector<std::int64_t>{0, 2});

  const auto w = wells(dec);
  REQUIRE(w.size() == 2);
  CHECK(w[0] == std::make_pair<std::int64_t, std::int64_t>(0, 2));
  CHECK(w[1] == std::make_pair<std::int64_t, std::int64_t>(2, 4));

  Path flat;
  flat.values.assign(20, 0.0);
  CHECK_THROWS_AS(stable_points(flat, 1.0, 19), HorizonError);
}

TEST_CASE("stable points match the exhaustive definition on random paths") {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const std::int64_t len = 200 + static_cast<std::int64_t>(seed) * 48;
    const Path p = test::random_path(len, 1000 + seed);
    const double depth = 3.0 + static_cast<double>(seed % 7);
    const auto expect = test::brute_stable_points(p, depth);
    if (expect.empty()) {
      CHECK_THROWS_AS(stable_points(p, depth, len - 1), HorizonError);
      continue;
    }
    const StableDecomposition dec = stable_points(p, depth, len - 1);
    CHECK(dec.minima == expect);
    const auto peaks = test::brute_peaks(p, expect);
    REQUIRE(dec.peaks.size() == dec.minima.size());
    CHECK(dec.peaks.front() == 0);
    for (std::size_t i = 1; i < dec.peaks.size(); ++i)
      CHECK(dec.peaks[i] == peaks[i - 1]);
    ++checked;
  }
  CHECK(checked >= 80);
}

TEST_CASE("nesting: larger depth gives a subset of stable points") {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Path p = test::random_path(1500, 2000 + seed);
    const double d1 = 3.0, d2 = 4.5;
    const auto s1 = test::brute_stable_points(p, d1);
    const auto s2 = test::brute_stable_points(p, d2);
    if (s1.empty() || s2.empty()) continue;
    const StableDecomposition dec1 = stable_points(p, d1, p.size() - 1);
    const StableDecomposition dec2 = stable_points(p, d2, p.size() - 1);
    for (std::int64_t m : dec2.minima)
      CHECK(std::binary_search(dec1.minima.begin(), dec1.minima.end(), m));
  }
}

TEST_CASE("interleaving invariant") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Path p = test::random_path(2000, 3000 + seed);
    StableDecomposition dec;
    try {
      dec = stable_points(p, 5.0, p.size() - 1);
    } catch (const HorizonError&) {
      continue;
    }
    REQUIRE(dec.peaks.size() == dec.minima.size());
    for (std::size_t i = 0; i < dec.minima.size(); ++i) {
      if (i == 0)
        CHECK(dec.peaks[i] <= dec.minima[i]);
      else
        CHECK(dec.peaks[i] < dec.minima[i]);
      if (i + 1 < dec.peaks.size()) CHECK(dec.minima[i] < dec.peaks[i + 1]);
    }
  }
}

TEST_CASE("elevation") {
  Path p;
  p.values = {0.0, -2.0, 1.0, -3.0, 0.0};
  CHECK(elevation(p, 0, 4) == doctest::Approx(3.0).epsilon(1e-15));

  Path mono;
  mono.values = {0.0, 1.0, 2.5, 4.0};
  CHECK(elevation(mono, 0, 3) == 0.0);

  Path valley;
  valley.values = {0.0, -2.0, 0.0};
  CHECK(elevation(valley, 0, 2) == 0.0);

  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Path r = test::random_path(40, 4000 + seed);
    const std::int64_t a = static_cast<std::int64_t>(seed % 5);
    const std::int64_t b = 39 - static_cast<std::int64_t>(seed % 7);
    CHECK(elevation(r, a, b) ==
          doctest::Approx(test::brute_elevation(r, a, b)).epsilon(1e-12));
  }
}

TEST_CASE("barriers match the exhaustive formulas") {
  Path flat;
  flat.values.assign(6, 0.0);
  const Barriers z = barrier_H(flat, 0, 5);
  CHECK(z.h_plus == 0.0);
  CHECK(z.h_minus == 0.0);
  CHECK(z.h == 0.0);

  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Path r = test::random_path(120, 5000 + seed);
    const std::int64_t a = static_cast<std::int64_t>(seed % 9);
    const std::int64_t b = 119 - static_cast<std::int64_t>(seed % 11);
    const Barriers got = barrier_H(r, a, b);
    const auto [hp, hm] = test::brute_barriers(r, a, b);
    CHECK(got.h_plus == doctest::Approx(hp).epsilon(1e-14));
    CHECK(got.h_minus == doctest::Approx(hm).epsilon(1e-14));
    CHECK(got.h == doctest::Approx(std::min(hp, hm)).epsilon(1e-14));
    CHECK(got.h_plus >= 0.0);
    CHECK(got.h_minus >= 0.0);
  }
}

TEST_CASE("zeta on the worked example and bounds") {
  const Path p = worked_example();
  CHECK(zeta(p, 2.0, 2) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK_THROWS_AS(zeta(p, 2.0, 3), HorizonError);

  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Path r = test::random_path(4000, 6000 + seed);
    for (int gamma : {2, 3}) {
      try {
        const double z2 = zeta(r, 6.0, gamma);
        CHECK(z2 >= static_cast<double>(gamma) * (gamma - 1) / 2.0);
      } catch (const HorizonError&) {
      }
    }
  }
}

TEST_CASE("zeta invariances") {
  SUBCASE("translation") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      Path r = test::random_path(3000, 7000 + seed);
      double base;
      try {
        base = zeta(r, 5.0, 2);
      } catch (const HorizonError&) {
        continue;
      }
      for (double& v : r.values) v += 17.25;
      CHECK(zeta(r, 5.0, 2) == doctest::Approx(base).epsilon(1e-12));
    }
  }
  SUBCASE("scaling: W'(x) = lambda W(x/lambda^2), lnt' = lambda lnt") {
    const double lambda = 1.75;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      Path r = test::random_path(3000, 8000 + seed);
      double base;
      try {
        base = zeta(r, 5.0, 3);
      } catch (const HorizonError&) {
        continue;
      }
      Path scaled;
      scaled.step = r.step * lambda * lambda;
      scaled.values = r.values;
      for (double& v : scaled.values) v *= lambda;
      CHECK(zeta(scaled, lambda * 5.0, 3) ==
            doctest::Approx(base).epsilon(1e-12));
    }
  }
}

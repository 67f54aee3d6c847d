#ifndef RWRE_TESTS_HELPERS_HPP
#define RWRE_TESTS_HELPERS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <vector>

#include "rwre/environment.hpp"
#include "rwre/path.hpp"
#include "rwre/rng.hpp"

namespace rwre::test {

// Random-increment path (Gaussian steps, so grid ties have probability 0).
inline Path random_path(std::int64_t length, std::uint64_t seed,
                        double sd = 1.0, double step = 1.0) {
  Path p;
  p.step = step;
  p.values.resize(static_cast<std::size_t>(length));
  p.values[0] = 0.0;
  Rng rng(seed);
  for (std::size_t i = 1; i < p.values.size(); ++i)
    p.values[i] = p.values[i - 1] + sd * rng.normal();
  return p;
}

inline Environment flat_env(std::int64_t n_sites) {
  const EnvironmentLaw law = EnvironmentLaw::custom({{1.0, 1.0, 1.0}}, 2.0);
  return gen_environment(law, n_sites, 1);
}

// Exhaustive t-stable points per the definition: the first point needs
// W(m) = min over [0, r]; later points need W(m) = min over [l, r], where
// l/r are the nearest depth-rises on each side. Leftmost argmin wins.
inline std::vector<std::int64_t> brute_stable_points(const Path& path,
                                                     double depth) {
  const auto& v = path.values;
  const std::int64_t n = path.size();
  std::vector<std::int64_t> out;

  auto rise_right = [&](std::int64_t m) -> std::optional<std::int64_t> {
    for (std::int64_t x = m + 1; x < n; ++x)
      if (v[static_cast<std::size_t>(x)] >=
          v[static_cast<std::size_t>(m)] + depth)
        return x;
    return std::nullopt;
  };
  auto rise_left = [&](std::int64_t m) -> std::optional<std::int64_t> {
    for (std::int64_t x = m - 1; x >= 0; --x)
      if (v[static_cast<std::size_t>(x)] >=
          v[static_cast<std::size_t>(m)] + depth)
        return x;
    return std::nullopt;
  };
  auto leftmost_min = [&](std::int64_t a, std::int64_t b) {
    std::int64_t best = a;
    for (std::int64_t x = a + 1; x <= b; ++x)
      if (v[static_cast<std::size_t>(x)] < v[static_cast<std::size_t>(best)])
        best = x;
    return best;
  };

  std::int64_t first = -1;
  for (std::int64_t m = 0; m < n; ++m) {
    const auto r = rise_right(m);
    if (r && leftmost_min(0, *r) == m) {
      first = m;
      break;
    }
  }
  if (first < 0) return out;
  out.push_back(first);

  for (std::int64_t m = first + 1; m < n; ++m) {
    const auto l = rise_left(m);
    const auto r = rise_right(m);
    if (l && r && leftmost_min(*l, *r) == m) out.push_back(m);
  }
  return out;
}

// Separating peaks: leftmost argmax strictly between successive minima.
inline std::vector<std::int64_t> brute_peaks(
    const Path& path, const std::vector<std::int64_t>& minima) {
  const auto& v = path.values;
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i + 1 < minima.size(); ++i) {
    std::int64_t best = minima[i] + 1;
    for (std::int64_t x = best + 1; x < minima[i + 1]; ++x)
      if (v[static_cast<std::size_t>(x)] > v[static_cast<std::size_t>(best)])
        best = x;
    out.push_back(best);
  }
  return out;
}

// O(n^3) elevation straight from the definition.
inline double brute_elevation(const Path& path, std::int64_t a,
                              std::int64_t b) {
  const auto& v = path.values;
  double mn = v[static_cast<std::size_t>(a)];
  for (std::int64_t x = a; x <= b; ++x)
    mn = std::min(mn, v[static_cast<std::size_t>(x)]);
  double best = 0.0;
  for (std::int64_t x = a; x <= b; ++x)
    for (std::int64_t y = x; y <= b; ++y)
      for (std::int64_t z = x; z <= y; ++z)
        best = std::max(best, v[static_cast<std::size_t>(z)] -
                                  v[static_cast<std::size_t>(x)] -
                                  v[static_cast<std::size_t>(y)] + mn);
  return best;
}

// O(n^2) barriers straight from the formulas: H+ scans min over [a,x),
// H- scans min over (x,b].
inline std::pair<double, double> brute_barriers(const Path& path,
                                                std::int64_t a,
                                                std::int64_t b) {
  const auto& v = path.values;
  double hp = 0.0, hm = 0.0;
  for (std::int64_t x = a + 1; x <= b; ++x) {
    double right_max = v[static_cast<std::size_t>(x)];
    for (std::int64_t y = x; y <= b; ++y)
      right_max = std::max(right_max, v[static_cast<std::size_t>(y)]);
    double left_min = v[static_cast<std::size_t>(a)];
    for (std::int64_t y = a; y < x; ++y)
      left_min = std::min(left_min, v[static_cast<std::size_t>(y)]);
    hp = std::max(hp, right_max - left_min);
  }
  for (std::int64_t x = a; x < b; ++x) {
    double left_max = v[static_cast<std::size_t>(a)];
    for (std::int64_t y = a; y <= x; ++y)
      left_max = std::max(left_max, v[static_cast<std::size_t>(y)]);
    double right_min = v[static_cast<std::size_t>(b)];
    for (std::int64_t y = x + 1; y <= b; ++y)
      right_min = std::min(right_min, v[static_cast<std::size_t>(y)]);
    hm = std::max(hm, left_max - right_min);
  }
  return {std::max(hp, 0.0), std::max(hm, 0.0)};
}

}  // namespace rwre::test

#endif  // RWRE_TESTS_HELPERS_HPP

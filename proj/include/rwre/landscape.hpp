#ifndef RWRE_LANDSCAPE_HPP
#define RWRE_LANDSCAPE_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "rwre/path.hpp"

namespace rwre::landscape {

// Ordered t-stable points of a path together with the separating peaks.
// All positions are grid indices (real position = index * path.step).
// peaks[0] = 0 by convention; peaks and minima interleave:
//   peaks[i] <= minima[i] < peaks[i+1]   (equality only at index 0, when the
//   path rises immediately and the first stable point is the origin).
struct StableDecomposition {
  double lnt = 0.0;
  std::int64_t x_max = 0;  // analyzed range end (grid index)
  std::vector<std::int64_t> minima;
  std::vector<std::int64_t> peaks;
};

// First t-stable point to the right of the origin, for stability depth
// `depth` (= ln t). Throws HorizonError naming the deepest running minimum
// when the path ends before any confirming rise.
std::int64_t first_stable_point(const Path& path, double depth);

// All t-stable points with index <= x_max, plus separating peaks.
// depth = ln t. Ties in argmin/argmax resolve to the leftmost index.
StableDecomposition stable_points(const Path& path, double lnt,
                                  std::int64_t x_max);

// Same scan with an explicit stability depth (used at scale t^a, where the
// depth is a * ln t).
StableDecomposition stable_points_depth(const Path& path, double depth,
                                        std::int64_t x_max);

// Half-open well intervals [left_peak, right_peak), one per stable point.
// The last well extends to dec.x_max.
std::vector<std::pair<std::int64_t, std::int64_t>> wells(
    const StableDecomposition& dec);

// Elevation of [a,b]: max over x,y in I, z between x and y of
// W(z) - W(x) - W(y) + min_I W. Always >= 0.
double elevation(const Path& path, std::int64_t a, std::int64_t b);

struct Barriers {
  double h_plus = 0.0;
  double h_minus = 0.0;
  double h = 0.0;  // min(h_plus, h_minus)
};

// Escape barriers of [a,b], clamped at 0 (monotone intervals have no
// barrier).
Barriers barrier_H(const Path& path, std::int64_t a, std::int64_t b);

// zeta_gamma(t) = sum_{i=1}^{gamma-1} (gamma-i) (W(h_i) - W(m_i)) / ln t
// over the first gamma t-stable points and their separating peaks.
double zeta(const Path& path, double lnt, int gamma);

}  // namespace rwre::landscape

#endif  // RWRE_LANDSCAPE_HPP

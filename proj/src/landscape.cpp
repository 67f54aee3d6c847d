#include "rwre/landscape.hpp"

#include <algorithm>
#include <string>

#include "rwre/errors.hpp"

namespace rwre::landscape {

namespace {

// One-pass alternating drawup/drawdown scan. Confirms a minimum when the
// path rises `depth` above the running minimum, then the separating peak
// when the path drops `depth` below the running maximum, and so on.
// Leftmost index wins ties. Returns minima and the peaks between them
// (peaks.size() == minima.size() - 1 or minima.size() when the last peak
// is confirmed but its following minimum is not).
struct ExtremaScan {
  std::vector<std::int64_t> minima;
  std::vector<std::int64_t> peaks;  // peaks[i] separates minima[i], minima[i+1]
  std::int64_t deepest_running_min = 0;
};

ExtremaScan scan_extrema(const Path& path, double depth) {
  const auto& v = path.values;
  const std::int64_t n = path.size();
  ExtremaScan out;

  bool tracking_min = true;
  // candidate extremum since the last confirmation
  std::int64_t cand_idx = 0;
  double cand_val = n > 0 ? v[0] : 0.0;
  // best opposite extremum seen after the candidate (seeds the next phase)
  std::int64_t opp_idx = -1;
  double opp_val = 0.0;

  for (std::int64_t x = 1; x < n; ++x) {
    const double w = v[static_cast<std::size_t>(x)];
    if (tracking_min) {
      if (w < cand_val) {
        cand_val = w;
        cand_idx = x;
        opp_idx = -1;
      } else if (opp_idx < 0 || w > opp_val) {
        opp_val = w;
        opp_idx = x;
      }
      if (opp_idx >= 0 && opp_val >= cand_val + depth) {
        out.minima.push_back(cand_idx);
        tracking_min = false;
        cand_idx = opp_idx;
        cand_val = opp_val;
        opp_idx = -1;
      }
    } else {
      if (w > cand_val) {
        cand_val = w;
        cand_idx = x;
        opp_idx = -1;
      } else if (opp_idx < 0 || w < opp_val) {
        opp_val = w;
        opp_idx = x;
      }
      if (opp_idx >= 0 && opp_val <= cand_val - depth) {
        out.peaks.push_back(cand_idx);
        tracking_min = true;
        cand_idx = opp_idx;
        cand_val = opp_val;
        opp_idx = -1;
      }
    }
  }
  out.deepest_running_min = tracking_min ? cand_idx
                                         : (out.minima.empty() ? 0 : out.minima.back());
  return out;
}

}  // namespace

std::int64_t first_stable_point(const Path& path, double depth) {
  ExtremaScan scan = scan_extrema(path, depth);
  if (scan.minima.empty())
    throw HorizonError(
        "horizon too short: no rise of " + std::to_string(depth) +
        " above the running minimum (deepest running minimum at index " +
        std::to_string(scan.deepest_running_min) + ")");
  return scan.minima.front();
}

StableDecomposition stable_points_depth(const Path& path, double depth,
                                        std::int64_t x_max) {
  ExtremaScan scan = scan_extrema(path, depth);
  if (scan.minima.empty())
    throw HorizonError(
        "horizon too short: no t-stable point within the path (depth " +
        std::to_string(depth) + ")");

  StableDecomposition dec;
  dec.lnt = depth;
  dec.x_max = std::min<std::int64_t>(x_max, path.size() - 1);
  dec.peaks.push_back(0);
  for (std::size_t i = 0; i < scan.minima.size(); ++i) {
    if (scan.minima[i] > dec.x_max) break;
    if (i > 0) dec.peaks.push_back(scan.peaks[i - 1]);
    dec.minima.push_back(scan.minima[i]);
  }
  if (dec.minima.empty())
    throw HorizonError("horizon too short: first t-stable point lies past x_max");
  return dec;
}

StableDecomposition stable_points(const Path& path, double lnt,
                                  std::int64_t x_max) {
  return stable_points_depth(path, lnt, x_max);
}

std::vector<std::pair<std::int64_t, std::int64_t>> wells(
    const StableDecomposition& dec) {
  std::vector<std::pair<std::int64_t, std::int64_t>> out;
  out.reserve(dec.minima.size());
  for (std::size_t i = 0; i < dec.minima.size(); ++i) {
    const std::int64_t left = dec.peaks[i];
    const std::int64_t right =
        i + 1 < dec.peaks.size() ? dec.peaks[i + 1] : dec.x_max;
    out.emplace_back(left, right);
  }
  return out;
}

double elevation(const Path& path, std::int64_t a, std::int64_t b) {
  const auto& v = path.values;
  const auto len = static_cast<std::size_t>(b - a + 1);
  std::vector<double> sufmin(len);
  sufmin[len - 1] = v[static_cast<std::size_t>(b)];
  for (std::size_t i = len - 1; i-- > 0;)
    sufmin[i] = std::min(v[static_cast<std::size_t>(a) + i], sufmin[i + 1]);

  double best = 0.0;
  double prefmin = v[static_cast<std::size_t>(a)];
  const double interval_min = sufmin[0];
  for (std::size_t i = 0; i < len; ++i) {
    const double w = v[static_cast<std::size_t>(a) + i];
    prefmin = std::min(prefmin, w);
    best = std::max(best, w - prefmin - sufmin[i] + interval_min);
  }
  return best;
}

Barriers barrier_H(const Path& path, std::int64_t a, std::int64_t b) {
  const auto& v = path.values;
  const auto len = static_cast<std::size_t>(b - a + 1);
  std::vector<double> sufmax(len), sufmin(len);
  sufmax[len - 1] = sufmin[len - 1] = v[static_cast<std::size_t>(b)];
  for (std::size_t i = len - 1; i-- > 0;) {
    const double w = v[static_cast<std::size_t>(a) + i];
    sufmax[i] = std::max(w, sufmax[i + 1]);
    sufmin[i] = std::min(w, sufmin[i + 1]);
  }

  Barriers out;
  double prefmin = v[static_cast<std::size_t>(a)];
  double prefmax = prefmin;
  for (std::size_t i = 1; i < len; ++i) {
    const double w_prev = v[static_cast<std::size_t>(a) + i - 1];
    prefmin = std::min(prefmin, w_prev);  // min over [a, a+i)
    prefmax = std::max(prefmax, w_prev);  // max over [a, a+i-1]
    // H+ candidate at x = a+i: climb from min over [a,x) to max over [x,b]
    out.h_plus = std::max(out.h_plus, sufmax[i] - prefmin);
    // H- candidate at x = a+i-1: climb from min over (x,b] to max over [a,x]
    out.h_minus = std::max(out.h_minus, prefmax - sufmin[i]);
  }
  out.h_plus = std::max(out.h_plus, 0.0);
  out.h_minus = std::max(out.h_minus, 0.0);
  out.h = std::min(out.h_plus, out.h_minus);
  return out;
}

double zeta(const Path& path, double lnt, int gamma) {
  if (gamma < 2) throw ConfigError("zeta: gamma must be >= 2");
  ExtremaScan scan = scan_extrema(path, lnt);
  if (scan.minima.size() < static_cast<std::size_t>(gamma))
    throw HorizonError("horizon too short: found " +
                       std::to_string(scan.minima.size()) + " of " +
                       std::to_string(gamma) + " required t-stable points");
  double sum = 0.0;
  for (int i = 1; i <= gamma - 1; ++i) {
    const double wm = path.values[static_cast<std::size_t>(scan.minima[i - 1])];
    const double wh = path.values[static_cast<std::size_t>(scan.peaks[i - 1])];
    sum += static_cast<double>(gamma - i) * (wh - wm);
  }
  return sum / lnt;
}

}  // namespace rwre::landscape

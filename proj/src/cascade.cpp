#include "rwre/cascade.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "rwre/errors.hpp"
#include "rwre/landscape.hpp"

namespace rwre::landscape {

namespace {

// Leftmost argmax over the open grid interval (a, b).
std::int64_t argmax_open(const Path& path, std::int64_t a, std::int64_t b) {
  std::int64_t best = a + 1;
  double best_v = path.values[static_cast<std::size_t>(best)];
  for (std::int64_t x = a + 2; x < b; ++x) {
    const double v = path.values[static_cast<std::size_t>(x)];
    if (v > best_v) {
      best_v = v;
      best = x;
    }
  }
  return best;
}

double value_at(const Path& path, std::int64_t idx) {
  return path.values[static_cast<std::size_t>(idx)];
}

// Fills h, r, l of a level from its m / m_prime positions.
void fill_level(const Path& path, double lnt, int gamma, CascadeLevel& lv) {
  lv.h.clear();
  lv.r.clear();
  lv.l.clear();
  for (int j = 1; j <= gamma - 1; ++j) {
    const std::int64_t left = lv.m[static_cast<std::size_t>(j - 1)];
    const std::int64_t right =
        j <= gamma - 2 ? lv.m[static_cast<std::size_t>(j)] : lv.m_prime;
    const std::int64_t hj = argmax_open(path, left, right);
    lv.h.push_back(hj);
    lv.r.push_back((value_at(path, hj) - value_at(path, left)) / lnt);
    lv.l.push_back((value_at(path, hj) - value_at(path, right)) / lnt);
  }
  double a = lv.r[0];
  for (double x : lv.r) a = std::min(a, x);
  for (double x : lv.l) a = std::min(a, x);
  lv.a = a;
}

// Index of the member attaining a_n, with the documented tie order:
// r_1..r_{gamma-1} first, then l_1..l_{gamma-1}. Returns (is_r, j).
std::pair<bool, int> attaining_member(const CascadeLevel& lv) {
  for (std::size_t j = 0; j < lv.r.size(); ++j)
    if (lv.r[j] == lv.a) return {true, static_cast<int>(j) + 1};
  for (std::size_t j = 0; j < lv.l.size(); ++j)
    if (lv.l[j] == lv.a) return {false, static_cast<int>(j) + 1};
  // a_n is the min of these values, so one of them attains it
  return {false, static_cast<int>(lv.l.size())};
}

bool contains_sorted(const std::vector<std::int64_t>& v, std::int64_t x) {
  return std::binary_search(v.begin(), v.end(), x);
}

// Index i such that x lies in the i-th well of dec.
std::size_t well_of(const StableDecomposition& dec, std::int64_t x) {
  // wells are [peaks[i], peaks[i+1]); the last one extends to x_max
  auto it = std::upper_bound(dec.peaks.begin(), dec.peaks.end(), x);
  const std::size_t i = static_cast<std::size_t>(it - dec.peaks.begin());
  return i == 0 ? 0 : i - 1;
}

}  // namespace

double CascadeTrace::zeta_from_trace() const {
  const CascadeLevel& last = levels.back();
  double sum = 0.0;
  for (int i = 1; i <= gamma - 1; ++i)
    sum += static_cast<double>(gamma - i) * last.r[static_cast<std::size_t>(i - 1)];
  return sum;
}

CascadeTrace construct_cascade(const Path& path, double lnt, int gamma,
                               double alpha) {
  if (gamma < 2) throw ConfigError("construct_cascade: gamma must be >= 2");
  if (!(alpha > 0.0 && alpha < 1.0))
    throw ConfigError("construct_cascade: alpha must lie in (0,1)");
  if (!(lnt > 0.0)) throw ConfigError("construct_cascade: lnt must be > 0");

  CascadeTrace trace;
  trace.lnt = lnt;
  trace.gamma = gamma;
  trace.alpha = alpha;

  const std::int64_t last_idx = path.size() - 1;

  // Level 1: the first gamma t^alpha-stable points.
  StableDecomposition dec0;
  try {
    dec0 = stable_points_depth(path, alpha * lnt, last_idx);
  } catch (const HorizonError& e) {
    throw HorizonError(std::string("cascade level 1: ") + e.what());
  }
  if (dec0.minima.size() < static_cast<std::size_t>(gamma))
    throw HorizonError("cascade level 1: only " +
                       std::to_string(dec0.minima.size()) + " of " +
                       std::to_string(gamma) + " t^alpha-stable points exist");

  CascadeLevel lv;
  lv.m.assign(dec0.minima.begin(), dec0.minima.begin() + (gamma - 1));
  lv.m_prime = dec0.minima[static_cast<std::size_t>(gamma - 1)];
  fill_level(path, lnt, gamma, lv);

  constexpr int kMaxLevels = 100000;
  while (lv.a < 1.0) {
    if (static_cast<int>(trace.levels.size()) >= kMaxLevels)
      throw FeasibilityError("cascade did not terminate (level cap reached)");
    const int n = static_cast<int>(trace.levels.size()) + 1;
    const double depth = lv.a * lnt;

    StableDecomposition dec;
    try {
      dec = stable_points_depth(path, depth, last_idx);
    } catch (const HorizonError& e) {
      throw HorizonError("cascade level " + std::to_string(n) + ": " + e.what());
    }

    const bool stable = contains_sorted(dec.minima, lv.m_prime);
    lv.m_prime_stable = stable;

    std::int64_t m_gamma, m_gamma1 = -1;
    if (stable) {
      m_gamma = lv.m_prime;
    } else {
      // m' sits inside the t^{a_n}-stable well of a point to its right
      const std::size_t wi = well_of(dec, lv.m_prime);
      std::int64_t owner = dec.minima[wi];
      if (owner <= lv.m_prime) {
        // grid-coincidence fallback: take the first stable point past m'
        auto it = std::upper_bound(dec.minima.begin(), dec.minima.end(),
                                   lv.m_prime);
        if (it == dec.minima.end())
          throw HorizonError("cascade level " + std::to_string(n) +
                             ": no stable point right of m'_gamma");
        owner = *it;
      }
      m_gamma = owner;
    }

    auto next_stable_after = [&](std::int64_t x) {
      auto it = std::upper_bound(dec.minima.begin(), dec.minima.end(), x);
      if (it == dec.minima.end())
        throw HorizonError("cascade level " + std::to_string(n) +
                           ": horizon too short, no t^{a_n}-stable point after index " +
                           std::to_string(x));
      return *it;
    };

    const auto [is_r, idx] = attaining_member(lv);
    const bool case1 = !is_r && idx == gamma - 1;

    CascadeLevel next;
    if (case1) {
      lv.case_tag = 1;
      lv.m_gamma = m_gamma;
      if (stable) {
        m_gamma1 = next_stable_after(m_gamma);
        lv.m_gamma1 = m_gamma1;
        lv.h_gamma = argmax_open(path, m_gamma, m_gamma1);
        next.m = lv.m;
        next.m_prime = m_gamma1;
      } else {
        lv.h_gamma = argmax_open(path, lv.m_prime, m_gamma);
        next.m = lv.m;
        next.m_prime = m_gamma;
      }
    } else {
      lv.case_tag = 2;
      lv.m_gamma = m_gamma;
      m_gamma1 = next_stable_after(m_gamma);
      lv.m_gamma1 = m_gamma1;
      lv.h_gamma = argmax_open(path, m_gamma, m_gamma1);

      // drop well `drop` (1-based among m_1..m_{gamma-1}); shift the rest left
      const int drop = is_r ? idx : idx + 1;
      next.m.clear();
      for (int j = 1; j <= gamma - 1; ++j) {
        if (j < drop)
          next.m.push_back(lv.m[static_cast<std::size_t>(j - 1)]);
        else if (j < gamma - 1)
          next.m.push_back(lv.m[static_cast<std::size_t>(j)]);
        else
          next.m.push_back(m_gamma);
      }
      next.m_prime = m_gamma1;
    }

    fill_level(path, lnt, gamma, next);
    trace.levels.push_back(lv);
    lv = next;
  }

  trace.levels.push_back(lv);
  trace.N = static_cast<int>(trace.levels.size());
  return trace;
}

TGoodMetrics t_good_diagnostics(const Path& path, double lnt, int gamma) {
  if (!(lnt > 1.0))
    throw ConfigError("t_good_diagnostics: needs lnt > 1 for alpha(t) < 1");
  TGoodMetrics out;
  out.alpha = std::pow(lnt, -5.0 / 6.0);
  out.epsilon = std::pow(lnt, -11.0 / 12.0);

  const CascadeTrace trace = construct_cascade(path, lnt, gamma, out.alpha);
  out.N = trace.N;
  out.m_prime_terminal = path.position(trace.levels.back().m_prime);
  out.m_prime_first = path.position(trace.levels.front().m_prime);

  const std::int64_t last_idx = path.size() - 1;
  std::int64_t touched = trace.levels.back().m_prime;

  for (const CascadeLevel& lv : trace.levels) {
    const double depth = (lv.a - out.epsilon) * lnt;
    StableDecomposition dec = stable_points_depth(path, depth, last_idx);
    auto count_in = [&](std::int64_t a, std::int64_t b) {
      auto lo = std::lower_bound(dec.minima.begin(), dec.minima.end(), a);
      auto hi = std::upper_bound(dec.minima.begin(), dec.minima.end(), b);
      return static_cast<int>(hi - lo);
    };
    int total = 0;
    for (int k = 1; k <= gamma - 1; ++k) {
      const std::int64_t mk = lv.m[static_cast<std::size_t>(k - 1)];
      const std::int64_t hk = lv.h[static_cast<std::size_t>(k - 1)];
      const std::int64_t mk1 =
          k <= gamma - 2 ? lv.m[static_cast<std::size_t>(k)] : lv.m_prime;
      total += count_in(mk, hk) + count_in(hk, mk1);
      touched = std::max(touched, mk1);
    }
    if (lv.h_gamma >= 0 && lv.m_gamma1 >= 0) {
      total += count_in(lv.m_gamma, lv.h_gamma) +
               count_in(lv.h_gamma, lv.m_gamma1);
      touched = std::max(touched, lv.m_gamma1);
    }
    out.j_counts.push_back(total);
  }

  double mx = 0.0;
  for (std::int64_t x = 0; x <= touched; ++x)
    mx = std::max(mx, std::abs(path.values[static_cast<std::size_t>(x)]));
  out.max_abs_w = mx;
  return out;
}

}  // namespace rwre::landscape

#ifndef RWRE_CASCADE_HPP
#define RWRE_CASCADE_HPP

#include <cstdint>
#include <vector>

#include "rwre/path.hpp"

namespace rwre::landscape {

// One level of the multiscale cascade. Tracks gamma-1 well minima m_j, the
// candidate gamma-th point m', the separating peaks h_j, and the scaled
// depths r_j = (W(h_j)-W(m_j))/lnt, l_j = (W(h_j)-W(m_{j+1}))/lnt.
// The transition fields describe how this level was advanced (unset on the
// terminal level).
struct CascadeLevel {
  double a = 0.0;                  // a_n
  std::vector<std::int64_t> m;     // m_1 .. m_{gamma-1}
  std::int64_t m_prime = -1;       // m'_gamma
  std::vector<std::int64_t> h;     // h_1 .. h_{gamma-1}
  std::vector<double> r;           // r_1 .. r_{gamma-1}
  std::vector<double> l;           // l_1 .. l_{gamma-1}

  int case_tag = 0;                // 1 or 2 (0 = terminal level)
  bool m_prime_stable = false;     // was m' already t^{a_n}-stable
  std::int64_t m_gamma = -1;       // renamed/owner gamma-th point
  std::int64_t m_gamma1 = -1;      // m_{gamma+1}, when defined
  std::int64_t h_gamma = -1;       // peak right of m_gamma, when defined
};

struct CascadeTrace {
  double lnt = 0.0;
  int gamma = 0;
  double alpha = 0.0;              // a_0
  std::vector<CascadeLevel> levels;
  int N = 0;                       // first n with a_n >= 1; levels.size() == N

  // zeta from the terminal depths: sum (gamma-i) r_i(N).
  double zeta_from_trace() const;
};

// Runs the stability-scale cascade from t^alpha up to t. Throws HorizonError
// naming the failing level when the path ends too early.
CascadeTrace construct_cascade(const Path& path, double lnt, int gamma,
                               double alpha);

// Raw diagnostics mirroring the five t-goodness quantities (the thresholds
// involve unspecified constants, so no pass/fail is reported).
// Uses alpha = lnt^{-5/6}, epsilon = lnt^{-11/12}.
struct TGoodMetrics {
  int N = 0;
  double m_prime_terminal = 0.0;   // real position of m'_gamma(N)
  double m_prime_first = 0.0;      // real position of m'_gamma(1)
  std::vector<int> j_counts;       // per level: sum_k J^1_k + J^2_k
  double max_abs_w = 0.0;          // over the scanned range
  double alpha = 0.0;
  double epsilon = 0.0;
};

TGoodMetrics t_good_diagnostics(const Path& path, double lnt, int gamma);

}  // namespace rwre::landscape

#endif  // RWRE_CASCADE_HPP

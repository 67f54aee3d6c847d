#include "rwre/oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rwre/errors.hpp"

namespace rwre::oracle {

namespace {
constexpr double kNegInf = -std::numeric_limits<double>::infinity();
}

ReflectedInterval::ReflectedInterval(const Environment& e, std::int64_t a_,
                                     std::int64_t b_)
    : env(&e), a(a_), b(b_) {
  if (a < 0 || b >= e.n_sites() || a >= b)
    throw ConfigError("ReflectedInterval: need 0 <= a < b < n_sites");
}

double hit_before(const Environment& env, std::int64_t a, std::int64_t x,
                  std::int64_t b) {
  if (a < 0 || b >= env.n_sites() + 1 || !(a <= x && x <= b) || a >= b)
    throw ConfigError("hit_before: need a <= x <= b within the environment");
  if (x == a) return 0.0;
  if (x == b) return 1.0;

  // V(y) - V(a) accumulated on the fly; normalize by the running max so the
  // exponentials cannot overflow for deep potentials.
  std::vector<double> vrel(static_cast<std::size_t>(b - a + 1), 0.0);
  double vmax = 0.0;
  for (std::int64_t y = a + 1; y <= b; ++y) {
    const auto& s = env.sites[static_cast<std::size_t>(y - 1)];
    vrel[static_cast<std::size_t>(y - a)] =
        vrel[static_cast<std::size_t>(y - a - 1)] + std::log(s.wm / s.wp);
    vmax = std::max(vmax, vrel[static_cast<std::size_t>(y - a)]);
  }
  double num = 0.0, den = 0.0;
  for (std::int64_t y = a + 1; y <= b; ++y) {
    const double term = std::exp(vrel[static_cast<std::size_t>(y - a)] - vmax);
    den += term;
    if (y <= x) num += term;
  }
  return num / den;
}

std::vector<double> invariant_measure(const ReflectedInterval& ri) {
  const Environment& env = *ri.env;
  const auto len = static_cast<std::size_t>(ri.b - ri.a + 1);
  std::vector<double> logmu(len, 0.0);
  for (std::size_t i = 1; i < len; ++i) {
    const auto site = static_cast<std::size_t>(ri.a) + i;
    logmu[i] = logmu[i - 1] + std::log(env.sites[site - 1].wp) -
               std::log(env.sites[site].wm);
  }
  const double mx = *std::max_element(logmu.begin(), logmu.end());
  std::vector<double> mu(len);
  double sum = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    mu[i] = std::exp(logmu[i] - mx);
    sum += mu[i];
  }
  for (double& m : mu) m /= sum;
  return mu;
}

double spectral_gap(const ReflectedInterval& ri, std::int64_t max_sites) {
  const std::int64_t n = ri.b - ri.a + 1;
  if (n > max_sites)
    throw FeasibilityError("spectral_gap: interval exceeds the dense cap of " +
                           std::to_string(max_sites) + " sites");
  const Environment& env = *ri.env;

  // Symmetrized negated generator: tridiagonal with
  //   diag(i)  = up_i + down_i (boundary clocks removed)
  //   off(i)   = -sqrt(up_i * down_{i+1})
  Eigen::VectorXd diag(n), sub(n - 1);
  for (std::int64_t i = 0; i < n; ++i) {
    const auto site = static_cast<std::size_t>(ri.a + i);
    const double up = i < n - 1 ? env.sites[site].wp : 0.0;
    const double down = i > 0 ? env.sites[site].wm : 0.0;
    diag(i) = up + down;
    if (i < n - 1)
      sub(i) = -std::sqrt(env.sites[site].wp *
                          env.sites[site + 1].wm);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  return solver.eigenvalues()(1);
}

// ---------------------------------------------------------------------------
// TupleChain

TupleChain::TupleChain(const Environment& env, int gamma, std::int64_t L)
    : env_(&env), gamma_(gamma), L_(L) {
  if (gamma < 2) throw ConfigError("TupleChain: gamma must be >= 2");
  if (L < gamma) throw ConfigError("TupleChain: L too small for gamma walks");
  if (env.n_sites() <= L)
    throw ConfigError("TupleChain: environment shorter than truncation L");

  // binomial table C(n, k), n <= L+1, k <= gamma
  binom_.assign(static_cast<std::size_t>(L + 2),
                std::vector<std::size_t>(static_cast<std::size_t>(gamma + 1), 0));
  for (std::size_t n = 0; n < binom_.size(); ++n) {
    binom_[n][0] = 1;
    for (int k = 1; k <= gamma; ++k)
      binom_[n][static_cast<std::size_t>(k)] =
          n == 0 ? 0
                 : binom_[n - 1][static_cast<std::size_t>(k - 1)] +
                       binom_[n - 1][static_cast<std::size_t>(k)];
  }
  n_states_ = binom_[static_cast<std::size_t>(L + 1)][static_cast<std::size_t>(gamma)];

  // pass 1: exit rates and the uniformization rate (max total exit rate)
  exit_rates_.resize(n_states_);
  std::vector<std::int64_t> tuple(static_cast<std::size_t>(gamma));
  for (int i = 0; i < gamma; ++i) tuple[static_cast<std::size_t>(i)] = i;
  for (std::size_t idx = 0; idx < n_states_; ++idx) {
    double exit = 0.0;
    for (int i = 0; i < gamma; ++i) {
      const std::int64_t x = tuple[static_cast<std::size_t>(i)];
      const auto& s = env.sites[static_cast<std::size_t>(x)];
      if (x < L) exit += s.wp;
      if (x > 0) exit += s.wm;
    }
    exit_rates_[idx] = exit;
    lambda_ = std::max(lambda_, exit);
    // advance the odometer in colex order, matching the combinadic rank
    for (int i = 0; i < gamma; ++i) {
      const std::int64_t cap = i == gamma - 1 ? L : tuple[static_cast<std::size_t>(i + 1)] - 1;
      if (tuple[static_cast<std::size_t>(i)] < cap) {
        ++tuple[static_cast<std::size_t>(i)];
        for (int j = 0; j < i; ++j) tuple[static_cast<std::size_t>(j)] = j;
        break;
      }
    }
  }

  // pass 2: transpose CSR of P = I + Q/lambda over transient states
  offsets_.assign(n_states_ + 1, 0);
  sources_.reserve(n_states_ * (2 * static_cast<std::size_t>(gamma) + 1));
  weights_.reserve(n_states_ * (2 * static_cast<std::size_t>(gamma) + 1));
  for (int i = 0; i < gamma; ++i) tuple[static_cast<std::size_t>(i)] = i;
  for (std::size_t idx = 0; idx < n_states_; ++idx) {
    // self loop
    sources_.push_back(static_cast<std::uint32_t>(idx));
    weights_.push_back(1.0 - exit_rates_[idx] / lambda_);
    std::size_t rank_acc = idx;
    for (int i = 0; i < gamma; ++i) {
      const std::int64_t x = tuple[static_cast<std::size_t>(i)];
      const std::size_t cxi = binom_[static_cast<std::size_t>(x)][static_cast<std::size_t>(i + 1)];
      // source with walker i at x+1 (it jumped down into x)
      const std::int64_t hi =
          i == gamma - 1 ? L : tuple[static_cast<std::size_t>(i + 1)] - 1;
      if (x + 1 <= hi) {
        const std::size_t src =
            rank_acc - cxi +
            binom_[static_cast<std::size_t>(x + 1)][static_cast<std::size_t>(i + 1)];
        sources_.push_back(static_cast<std::uint32_t>(src));
        weights_.push_back(env.sites[static_cast<std::size_t>(x + 1)].wm / lambda_);
      }
      // source with walker i at x-1 (it jumped up into x)
      const std::int64_t lo = i == 0 ? 0 : tuple[static_cast<std::size_t>(i - 1)] + 1;
      if (x - 1 >= lo) {
        const std::size_t src =
            rank_acc - cxi +
            binom_[static_cast<std::size_t>(x - 1)][static_cast<std::size_t>(i + 1)];
        sources_.push_back(static_cast<std::uint32_t>(src));
        weights_.push_back(env.sites[static_cast<std::size_t>(x - 1)].wp / lambda_);
      }
    }
    offsets_[idx + 1] = static_cast<std::uint32_t>(sources_.size());
    if (tuple[static_cast<std::size_t>(gamma - 1)] == L)
      boundary_states_.push_back(static_cast<std::uint32_t>(idx));
    for (int i = 0; i < gamma; ++i) {
      const std::int64_t cap = i == gamma - 1 ? L : tuple[static_cast<std::size_t>(i + 1)] - 1;
      if (tuple[static_cast<std::size_t>(i)] < cap) {
        ++tuple[static_cast<std::size_t>(i)];
        for (int j = 0; j < i; ++j) tuple[static_cast<std::size_t>(j)] = j;
        break;
      }
    }
  }
}

std::size_t TupleChain::rank(const std::vector<std::int64_t>& tuple) const {
  std::size_t r = 0;
  for (int i = 0; i < gamma_; ++i)
    r += binom_[static_cast<std::size_t>(tuple[static_cast<std::size_t>(i)])]
               [static_cast<std::size_t>(i + 1)];
  return r;
}

std::vector<std::int64_t> TupleChain::unrank(std::size_t idx) const {
  std::vector<std::int64_t> tuple(static_cast<std::size_t>(gamma_));
  for (int i = gamma_ - 1; i >= 0; --i) {
    std::int64_t x = L_;
    while (binom_[static_cast<std::size_t>(x)][static_cast<std::size_t>(i + 1)] > idx)
      --x;
    tuple[static_cast<std::size_t>(i)] = x;
    idx -= binom_[static_cast<std::size_t>(x)][static_cast<std::size_t>(i + 1)];
  }
  return tuple;
}

void TupleChain::for_each_transition(
    std::size_t idx,
    const std::function<void(std::size_t, double)>& fn) const {
  const std::vector<std::int64_t> tuple = unrank(idx);
  for (int i = 0; i < gamma_; ++i) {
    const std::int64_t x = tuple[static_cast<std::size_t>(i)];
    const auto& s = env_->sites[static_cast<std::size_t>(x)];
    const std::size_t cxi =
        binom_[static_cast<std::size_t>(x)][static_cast<std::size_t>(i + 1)];
    if (x < L_) {
      const bool collide =
          i < gamma_ - 1 && x + 1 == tuple[static_cast<std::size_t>(i + 1)];
      if (!collide)
        fn(idx - cxi +
               binom_[static_cast<std::size_t>(x + 1)][static_cast<std::size_t>(i + 1)],
           s.wp);
    }
    if (x > 0) {
      const bool collide =
          i > 0 && x - 1 == tuple[static_cast<std::size_t>(i - 1)];
      if (!collide)
        fn(idx - cxi +
               binom_[static_cast<std::size_t>(x - 1)][static_cast<std::size_t>(i + 1)],
           s.wm);
    }
  }
}

double TupleChain::exit_rate(std::size_t idx) const { return exit_rates_[idx]; }

// ---------------------------------------------------------------------------
// Uniformized survival

namespace {

struct SeriesData {
  std::vector<double> log_s;  // log_s[k] = ln P[still transient after k steps]
  std::vector<double> touched;  // cumulative inflow into boundary states
  std::uint64_t matvecs = 0;
};

// Runs the uniformized kernel for k_max steps (or until steady-state
// detection allows a geometric extension) and records the survival series.
//
// The sweep is restricted to the contiguous rank prefix of states whose top
// coordinate is <= frontier+1; one step moves mass by at most one site, and
// the frontier is advanced whenever its outermost shell holds more than a
// vanishing fraction of the surviving mass, so the truncation error stays
// far below tol while the cost tracks the actual support.
SeriesData run_series(const TupleChain& chain, std::size_t start,
                      std::size_t k_max, double tol,
                      const SurvivalOptions& opts) {
  const std::size_t n = chain.n_states();
  const auto& off = chain.csr_offsets();
  const auto& src = chain.csr_sources();
  const auto& wgt = chain.csr_weights();

#ifdef _OPENMP
  if (opts.workers > 0) omp_set_num_threads(opts.workers);
#endif

  SeriesData out;
  out.log_s.assign(k_max + 1, kNegInf);
  out.touched.assign(k_max + 1, 0.0);
  out.log_s[0] = 0.0;

  std::vector<double> u(n, 0.0), u2(n, 0.0);
  u[start] = 1.0;
  double scale_log = 0.0;  // actual vector = u * exp(scale_log)
  long double prev_sum = 1.0L;

  std::int64_t frontier = chain.unrank(start).back();
  const double shell_eps =
      tol * 1e-4 / static_cast<double>(k_max + 1);  // per-step leak budget

  constexpr std::size_t kCheck = 64;
  std::vector<double> snapshot;
  std::size_t snap_active = 0;
  double snap_rate = std::numeric_limits<double>::quiet_NaN();
  double rate = 0.0;  // per-step log decay

  std::size_t k = 1;
  for (; k <= k_max; ++k) {
    const std::size_t active = chain.prefix_states(frontier + 1);
#pragma omp parallel for schedule(static)
    for (std::int64_t row = 0; row < static_cast<std::int64_t>(active); ++row) {
      double acc = 0.0;
      const auto lo = off[static_cast<std::size_t>(row)];
      const auto hi = off[static_cast<std::size_t>(row) + 1];
      for (std::uint32_t e = lo; e < hi; ++e) acc += wgt[e] * u[src[e]];
      u2[static_cast<std::size_t>(row)] = acc;
    }

    long double sum = 0.0L;
    for (std::size_t i = 0; i < active; ++i) sum += u2[i];
    if (!(sum > 0.0L)) {  // everything absorbed
      out.matvecs = k;
      return out;
    }

    double inflow = 0.0;
    if (frontier + 1 >= chain.L()) {
      for (std::uint32_t b : chain.boundary_states())
        inflow += u2[b] - chain.self_weight(b) * u[b];
      inflow = std::max(inflow, 0.0);
    }

    // grow the frontier while its outer shell is non-negligible
    while (frontier + 1 < chain.L()) {
      long double shell = 0.0L;
      for (std::size_t i = chain.prefix_states(frontier); i < active; ++i)
        shell += u2[i];
      if (shell <= shell_eps * sum) break;
      ++frontier;
      break;  // at most one extra shell can be populated per step
    }

    rate = static_cast<double>(std::log(sum / prev_sum));
    out.log_s[k] = out.log_s[k - 1] + rate;
    out.touched[k] =
        out.touched[k - 1] + inflow * std::exp(scale_log);

    prev_sum = sum;
    if (sum < 1e-250L) {
      const double s = static_cast<double>(sum);
      for (std::size_t i = 0; i < active; ++i) u2[i] /= s;
      scale_log += std::log(s);
      prev_sum = 1.0L;
    }
    std::swap(u, u2);

    if (opts.steady_state_detection && k % kCheck == 0) {
      const double cur_sum = static_cast<double>(prev_sum);
      if (snap_active == active && std::isfinite(snap_rate)) {
        double l1 = 0.0;
        for (std::size_t i = 0; i < active; ++i)
          l1 += std::abs(u[i] / cur_sum - snapshot[i]);
        if (std::abs(rate - snap_rate) < opts.ssd_rate_eps &&
            l1 < opts.ssd_vector_eps) {
          // geometric extension of the series
          double inflow_abs = inflow * std::exp(scale_log);
          for (std::size_t j = k + 1; j <= k_max; ++j) {
            out.log_s[j] = out.log_s[j - 1] + rate;
            inflow_abs *= std::exp(rate);
            out.touched[j] = out.touched[j - 1] + inflow_abs;
          }
          out.matvecs = k;
          return out;
        }
      }
      snapshot.assign(u.begin(), u.begin() + static_cast<std::int64_t>(active));
      for (double& v : snapshot) v /= cur_sum;
      snap_active = active;
      snap_rate = rate;
    }
  }
  out.matvecs = k_max;
  return out;
}

// Truncation point covering the Poisson mass of mean m beyond relative tol.
std::size_t poisson_cutoff(double m, double tol) {
  const double spread = 12.0 + std::sqrt(std::max(0.0, -std::log(tol)));
  return static_cast<std::size_t>(
      std::ceil(m + spread * std::sqrt(m + 1.0) + 64.0));
}

SurvivalResult evaluate_at(const SeriesData& series, double lambda, double t,
                           std::int64_t L, double tol) {
  SurvivalResult res;
  res.t = t;
  res.L = L;
  res.tol = tol;
  res.matvecs = series.matvecs;

  const double m = lambda * t;
  const std::size_t kt =
      std::min<std::size_t>(series.log_s.size() - 1, poisson_cutoff(m, tol));

  // logsumexp over k of (ln Poisson(m, k) + log_s[k])
  double lw = -m;  // ln w_0
  double best = kNegInf, acc = 0.0;
  double boundary = 0.0;
  for (std::size_t k = 0; k <= kt; ++k) {
    const double ls = series.log_s[k];
    if (ls != kNegInf) {
      const double term = lw + ls;
      if (term > best) {
        acc = acc * std::exp(best - term) + 1.0;
        best = term;
      } else {
        acc += std::exp(term - best);
      }
    }
    boundary += std::exp(lw) * series.touched[k];
    lw += std::log(m) - std::log(static_cast<double>(k + 1));
  }
  res.log_p = best == kNegInf ? kNegInf : best + std::log(acc);
  res.p = std::exp(res.log_p);
  res.boundary_mass = std::min(boundary, 1.0);
  return res;
}

void check_caps(int gamma, std::int64_t L, std::size_t n_states,
                const SurvivalOptions& opts) {
  if (gamma == 2 && L > 3000)
    throw FeasibilityError(
        "exact_survival: gamma=2 supports L <= 3000 by default");
  if (gamma == 3 && L > 120)
    throw FeasibilityError(
        "exact_survival: gamma=3 supports L <= 120 by default");
  if (n_states > opts.max_states)
    throw FeasibilityError(
        "exact_survival: tuple state count " + std::to_string(n_states) +
        " exceeds the cap of " + std::to_string(opts.max_states) +
        "; reduce L or gamma");
}

}  // namespace

std::vector<SurvivalResult> exact_survival_multi(
    const Environment& env, const sim::WalkerConfig& cfg,
    const std::vector<double>& ts, std::int64_t L, double tol,
    const SurvivalOptions& opts) {
  cfg.validate(env);
  if (ts.empty()) throw ConfigError("exact_survival: empty time grid");
  for (double t : ts)
    if (!(t >= 0.0)) throw ConfigError("exact_survival: t must be >= 0");
  for (std::int64_t s : cfg.starts)
    if (s >= L) throw ConfigError("exact_survival: all starts must be < L");
  if (!(tol > 0.0 && tol < 1.0))
    throw ConfigError("exact_survival: tol must lie in (0,1)");

  TupleChain chain(env, cfg.gamma, L);
  check_caps(cfg.gamma, L, chain.n_states(), opts);

  const double t_max = *std::max_element(ts.begin(), ts.end());
  const std::size_t k_max =
      poisson_cutoff(chain.uniformization_rate() * t_max, tol);
  const SeriesData series =
      run_series(chain, chain.rank(cfg.starts), k_max, tol, opts);

  std::vector<SurvivalResult> out;
  out.reserve(ts.size());
  for (double t : ts)
    out.push_back(
        evaluate_at(series, chain.uniformization_rate(), t, L, tol));
  return out;
}

SurvivalResult exact_survival(const Environment& env,
                              const sim::WalkerConfig& cfg, double t,
                              std::int64_t L, double tol,
                              const SurvivalOptions& opts) {
  return exact_survival_multi(env, cfg, {t}, L, tol, opts).front();
}

TailExponentResult tail_exponent(const Environment& env,
                                 const sim::WalkerConfig& cfg,
                                 const std::vector<double>& lnt_grid,
                                 std::int64_t L, double tol,
                                 const SurvivalOptions& opts) {
  if (lnt_grid.empty()) throw ConfigError("tail_exponent: empty grid");
  for (std::size_t i = 1; i < lnt_grid.size(); ++i)
    if (lnt_grid[i] <= lnt_grid[i - 1])
      throw ConfigError("tail_exponent: lnt grid must be increasing");

  std::vector<double> ts;
  for (double l : lnt_grid) ts.push_back(std::exp(l));
  const std::vector<SurvivalResult> survivals =
      exact_survival_multi(env, cfg, ts, L, tol, opts);

  TailExponentResult out;
  out.lnt = lnt_grid;
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < survivals.size(); ++i) {
    const double x = lnt_grid[i];
    const double y = -survivals[i].log_p;
    out.log_p.push_back(survivals[i].log_p);
    out.e.push_back(y / x);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const auto n = static_cast<double>(survivals.size());
  out.slope = n > 1 ? (n * sxy - sx * sy) / (n * sxx - sx * sx) : out.e[0];
  return out;
}

}  // namespace rwre::oracle

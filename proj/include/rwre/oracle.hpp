#ifndef RWRE_ORACLE_HPP
#define RWRE_ORACLE_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

#include "rwre/environment.hpp"
#include "rwre/simulate.hpp"

namespace rwre::oracle {

// Reflected random walk on [a, b] (no exit at either end).
struct ReflectedInterval {
  const Environment* env = nullptr;
  std::int64_t a = 0;
  std::int64_t b = 0;

  ReflectedInterval(const Environment& e, std::int64_t a_, std::int64_t b_);
};

// P[reach b before a | start at x], from the ratio of partial sums of
// e^{V(y)-V(a)}. Normalized by the max potential on the range so long
// environments cannot overflow. Boundary convention: x=a -> 0, x=b -> 1.
double hit_before(const Environment& env, std::int64_t a, std::int64_t x,
                  std::int64_t b);

// Stationary distribution of the reflected walk, from detailed balance:
// mu(i) w+_i = mu(i+1) w-_{i+1}. Returned over sites a..b, summing to 1.
std::vector<double> invariant_measure(const ReflectedInterval& ri);

// Smallest nonzero eigenvalue of the negated generator. Reversibility is
// exploited: the generator is symmetrized by sqrt(mu) into a symmetric
// tridiagonal matrix.
double spectral_gap(const ReflectedInterval& ri,
                    std::int64_t max_sites = 2000);

// Product chain of gamma ordered walks on [0, L], both ends reflecting,
// absorbed at the first collision. States are strictly increasing tuples.
class TupleChain {
 public:
  TupleChain(const Environment& env, int gamma, std::int64_t L);

  std::size_t n_states() const { return n_states_; }
  int gamma() const { return gamma_; }
  std::int64_t L() const { return L_; }
  double uniformization_rate() const { return lambda_; }

  std::size_t rank(const std::vector<std::int64_t>& tuple) const;
  std::vector<std::int64_t> unrank(std::size_t idx) const;

  // Number of states whose largest coordinate is <= xmax. The combinadic
  // rank is monotone in the top coordinate, so these states are exactly the
  // ranks [0, prefix_states(xmax)); the survival engine exploits this to
  // keep its sweeps proportional to the support of the distribution.
  std::size_t prefix_states(std::int64_t xmax) const {
    if (xmax < gamma_ - 1) return 0;
    return binom_[static_cast<std::size_t>(std::min(xmax, L_) + 1)]
                 [static_cast<std::size_t>(gamma_)];
  }

  // Enumerates transient-to-transient transitions of state `idx`:
  // fn(target, rate). Collisions (absorption) are not reported; they only
  // reduce the row sum.
  void for_each_transition(
      std::size_t idx,
      const std::function<void(std::size_t, double)>& fn) const;

  // Total exit rate of a state (including absorbing moves).
  double exit_rate(std::size_t idx) const;

  // Row-compressed transpose of the uniformized transient kernel
  // P = I + Q/lambda (self-loops included), used by the survival engine.
  const std::vector<std::uint32_t>& csr_offsets() const { return offsets_; }
  const std::vector<std::uint32_t>& csr_sources() const { return sources_; }
  const std::vector<double>& csr_weights() const { return weights_; }
  const std::vector<std::uint32_t>& boundary_states() const {
    return boundary_states_;  // states with max coordinate == L
  }
  double self_weight(std::size_t idx) const {
    return 1.0 - exit_rates_[idx] / lambda_;
  }

 private:
  const Environment* env_;
  int gamma_;
  std::int64_t L_;
  std::size_t n_states_;
  double lambda_ = 0.0;
  std::vector<std::vector<std::size_t>> binom_;
  std::vector<double> exit_rates_;
  std::vector<std::uint32_t> offsets_, sources_;
  std::vector<double> weights_;
  std::vector<std::uint32_t> boundary_states_;
};

struct SurvivalOptions {
  std::size_t max_states = 5'000'000;
  // steady-state detection: once the per-step decay and the normalized
  // vector both stop changing, the tail of the series is extended
  // geometrically without further matvecs
  bool steady_state_detection = true;
  double ssd_rate_eps = 1e-14;   // tolerance on per-step log-decay drift
  double ssd_vector_eps = 1e-10; // L1 tolerance on the normalized vector
  int workers = 0;
};

struct SurvivalResult {
  double t = 0.0;
  double p = 0.0;       // survival probability (0 if underflowed; see log_p)
  double log_p = 0.0;   // ln P, valid even deep in the tail
  double boundary_mass = 0.0;  // upper bound on P[some walk touched L]
  std::int64_t L = 0;
  double tol = 0.0;
  std::uint64_t matvecs = 0;
};

// P[T_gamma > t] by uniformization with a truncated Poisson series;
// relative truncation error <= tol. The right boundary at L reflects, and
// boundary_mass reports how much probability interacted with it.
SurvivalResult exact_survival(const Environment& env,
                              const sim::WalkerConfig& cfg, double t,
                              std::int64_t L, double tol,
                              const SurvivalOptions& opts = {});

// Shares one uniformization sweep across several time points (the s_k
// series does not depend on t).
std::vector<SurvivalResult> exact_survival_multi(
    const Environment& env, const sim::WalkerConfig& cfg,
    const std::vector<double>& ts, std::int64_t L, double tol,
    const SurvivalOptions& opts = {});

struct TailExponentResult {
  std::vector<double> lnt;
  std::vector<double> e;      // -ln P / ln t
  std::vector<double> log_p;
  double slope = 0.0;         // least-squares slope of -ln P against ln t
};

// e(t) over a grid of ln t values, plus the regression slope.
TailExponentResult tail_exponent(const Environment& env,
                                 const sim::WalkerConfig& cfg,
                                 const std::vector<double>& lnt_grid,
                                 std::int64_t L, double tol,
                                 const SurvivalOptions& opts = {});

}  // namespace rwre::oracle

#endif  // RWRE_ORACLE_HPP

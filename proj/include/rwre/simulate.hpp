#ifndef RWRE_SIMULATE_HPP
#define RWRE_SIMULATE_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "rwre/environment.hpp"

namespace rwre::sim {

struct WalkerConfig {
  int gamma = 2;
  std::vector<std::int64_t> starts;  // strictly increasing; default xi_i(0) = i
  double t_max = 0.0;                // mandatory censoring horizon

  static WalkerConfig with_defaults(int gamma, double t_max);
  void validate(const Environment& env) const;
};

enum class OutcomeKind { Met, Censored, Boundary };

struct MeetingOutcome {
  OutcomeKind kind = OutcomeKind::Censored;
  double time = 0.0;
  std::optional<std::int64_t> meeting_site;
  std::optional<std::pair<int, int>> pair;  // walker indices (0-based)
  std::uint64_t jumps = 0;
};

enum class MeetingMode { FirstPair, Coalescing, Simultaneous };

// Exact event-driven dynamics: each step draws the next jump from the
// superposition of all active exponential clocks (at site 0 only the up
// clock runs). Deterministic per seed.
MeetingOutcome sample_meeting(const Environment& env, const WalkerConfig& cfg,
                              std::uint64_t seed);
MeetingOutcome sample_coalescing(const Environment& env,
                                 const WalkerConfig& cfg, std::uint64_t seed);
MeetingOutcome sample_simultaneous(const Environment& env,
                                   const WalkerConfig& cfg,
                                   std::uint64_t seed);
MeetingOutcome sample(const Environment& env, const WalkerConfig& cfg,
                      MeetingMode mode, std::uint64_t seed);

struct SurvivalCurve {
  std::vector<double> t_grid;
  std::vector<double> p;
  std::vector<double> stderr_;
  std::uint64_t n_replicas = 0;
  std::uint64_t seed = 0;
  std::uint64_t n_boundary = 0;  // replicas that hit the environment's edge
  std::uint64_t n_censored = 0;
};

// p[k] = fraction of replicas whose outcome time exceeds t_grid[k]
// (censored and boundary replicas count as survived). Replica seeds are
// counter-split from master_seed, so the result does not depend on how the
// replicas are scheduled. workers = 0 uses the OpenMP default.
SurvivalCurve survival_curve(const Environment& env, const WalkerConfig& cfg,
                             MeetingMode mode,
                             const std::vector<double>& t_grid,
                             std::uint64_t n_replicas,
                             std::uint64_t master_seed, int workers = 0);

// Plain-loop reference used by the tests and the benchmark.
SurvivalCurve survival_curve_serial(const Environment& env,
                                    const WalkerConfig& cfg, MeetingMode mode,
                                    const std::vector<double>& t_grid,
                                    std::uint64_t n_replicas,
                                    std::uint64_t master_seed);

}  // namespace rwre::sim

#endif  // RWRE_SIMULATE_HPP

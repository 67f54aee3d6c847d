#include "rwre/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rwre/errors.hpp"
#include "rwre/rng.hpp"

namespace rwre::sim {

WalkerConfig WalkerConfig::with_defaults(int gamma, double t_max) {
  WalkerConfig cfg;
  cfg.gamma = gamma;
  cfg.t_max = t_max;
  for (int i = 1; i <= gamma; ++i) cfg.starts.push_back(i);
  return cfg;
}

void WalkerConfig::validate(const Environment& env) const {
  if (gamma < 2) throw ConfigError("WalkerConfig: gamma must be >= 2");
  if (static_cast<int>(starts.size()) != gamma)
    throw ConfigError("WalkerConfig: starts must list gamma positions");
  for (std::size_t i = 0; i < starts.size(); ++i) {
    if (starts[i] < 0 || starts[i] >= env.n_sites())
      throw ConfigError("WalkerConfig: start outside environment");
    if (i > 0 && starts[i] <= starts[i - 1])
      throw ConfigError("WalkerConfig: starts must be strictly increasing");
  }
  if (!(t_max >= 0.0)) throw ConfigError("WalkerConfig: t_max must be >= 0");
}

namespace {

// Shared event loop. `positions` holds one entry per particle; for the
// coalescing mode particles are merged groups and the vector shrinks.
MeetingOutcome run_walk(const Environment& env, const WalkerConfig& cfg,
                        MeetingMode mode, std::uint64_t seed) {
  cfg.validate(env);

  MeetingOutcome out;
  if (cfg.t_max == 0.0) {
    out.kind = OutcomeKind::Censored;
    out.time = 0.0;
    return out;
  }

  std::vector<std::int64_t> pos = cfg.starts;
  const std::int64_t last = env.n_sites() - 1;
  if (pos.back() == last) {
    out.kind = OutcomeKind::Boundary;
    out.time = 0.0;
    return out;
  }
  Rng rng(seed);

  double time = 0.0;
  std::vector<double> rates;  // 2 per particle: up, down (0 if inactive)
  for (;;) {
    rates.clear();
    double total = 0.0;
    for (std::int64_t y : pos) {
      const auto& s = env.sites[static_cast<std::size_t>(y)];
      const double up = s.wp;
      const double down = y >= 1 ? s.wm : 0.0;
      rates.push_back(up);
      rates.push_back(down);
      total += up + down;
    }

    time += rng.exponential(total);
    if (time > cfg.t_max) {
      out.kind = OutcomeKind::Censored;
      out.time = cfg.t_max;
      return out;
    }

    // pick the firing clock
    double u = rng.uniform() * total;
    std::size_t k = 0;
    for (; k + 1 < rates.size(); ++k) {
      if (u < rates[k]) break;
      u -= rates[k];
    }
    const std::size_t walker = k / 2;
    const std::int64_t step = (k % 2 == 0) ? 1 : -1;
    pos[walker] += step;
    ++out.jumps;

    if (pos[walker] == last) {
      out.kind = OutcomeKind::Boundary;
      out.time = time;
      return out;
    }

    // meeting checks at jump instants
    const std::int64_t site = pos[walker];
    if (mode == MeetingMode::Simultaneous) {
      // identical particles: restore sortedness by swapping with the
      // neighbor the walker just drew level past
      if (step > 0 && walker + 1 < pos.size() && pos[walker] > pos[walker + 1])
        std::swap(pos[walker], pos[walker + 1]);
      else if (step < 0 && walker > 0 && pos[walker] < pos[walker - 1])
        std::swap(pos[walker], pos[walker - 1]);
      if (pos.front() == pos.back()) {
        out.kind = OutcomeKind::Met;
        out.time = time;
        out.meeting_site = site;
        return out;
      }
      continue;
    }

    int other = -1;
    if (walker > 0 && pos[walker - 1] == site)
      other = static_cast<int>(walker) - 1;
    else if (walker + 1 < pos.size() && pos[walker + 1] == site)
      other = static_cast<int>(walker) + 1;

    if (other >= 0) {
      if (mode == MeetingMode::FirstPair) {
        out.kind = OutcomeKind::Met;
        out.time = time;
        out.meeting_site = site;
        out.pair = std::make_pair(std::min<int>(walker, other),
                                  std::max<int>(walker, other));
        return out;
      }
      // coalescing: merged walks move as one
      pos.erase(pos.begin() + std::max<int>(walker, other));
      if (pos.size() == 1) {
        out.kind = OutcomeKind::Met;
        out.time = time;
        out.meeting_site = site;
        return out;
      }
    }
  }
}

}  // namespace

MeetingOutcome sample_meeting(const Environment& env, const WalkerConfig& cfg,
                              std::uint64_t seed) {
  return run_walk(env, cfg, MeetingMode::FirstPair, seed);
}

MeetingOutcome sample_coalescing(const Environment& env,
                                 const WalkerConfig& cfg, std::uint64_t seed) {
  return run_walk(env, cfg, MeetingMode::Coalescing, seed);
}

MeetingOutcome sample_simultaneous(const Environment& env,
                                   const WalkerConfig& cfg,
                                   std::uint64_t seed) {
  return run_walk(env, cfg, MeetingMode::Simultaneous, seed);
}

MeetingOutcome sample(const Environment& env, const WalkerConfig& cfg,
                      MeetingMode mode, std::uint64_t seed) {
  return run_walk(env, cfg, mode, seed);
}

namespace {

SurvivalCurve aggregate(const std::vector<double>& t_grid,
                        const std::vector<std::uint64_t>& survived,
                        std::uint64_t n_replicas, std::uint64_t master_seed,
                        std::uint64_t n_boundary, std::uint64_t n_censored) {
  SurvivalCurve curve;
  curve.t_grid = t_grid;
  curve.n_replicas = n_replicas;
  curve.seed = master_seed;
  curve.n_boundary = n_boundary;
  curve.n_censored = n_censored;
  for (std::size_t k = 0; k < t_grid.size(); ++k) {
    const double p =
        static_cast<double>(survived[k]) / static_cast<double>(n_replicas);
    curve.p.push_back(p);
    curve.stderr_.push_back(
        std::sqrt(p * (1.0 - p) / static_cast<double>(n_replicas)));
  }
  return curve;
}

void check_grid(const WalkerConfig& cfg, const std::vector<double>& t_grid,
                std::uint64_t n_replicas) {
  if (t_grid.empty()) throw ConfigError("survival_curve: empty t_grid");
  if (n_replicas < 1) throw ConfigError("survival_curve: n_replicas >= 1");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (t_grid[i] <= t_grid[i - 1])
      throw ConfigError("survival_curve: t_grid must be increasing");
  if (cfg.t_max < t_grid.back())
    throw ConfigError("survival_curve: t_max must cover the whole t_grid");
}

}  // namespace

SurvivalCurve survival_curve(const Environment& env, const WalkerConfig& cfg,
                             MeetingMode mode,
                             const std::vector<double>& t_grid,
                             std::uint64_t n_replicas,
                             std::uint64_t master_seed, int workers) {
  cfg.validate(env);
  check_grid(cfg, t_grid, n_replicas);

  const std::size_t g = t_grid.size();
  std::vector<std::uint64_t> survived(g, 0);
  std::uint64_t n_boundary = 0, n_censored = 0;

#ifdef _OPENMP
  if (workers > 0) omp_set_num_threads(workers);
#else
  (void)workers;
#endif

#pragma omp parallel
  {
    std::vector<std::uint64_t> local(g, 0);
    std::uint64_t local_boundary = 0, local_censored = 0;
#pragma omp for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n_replicas); ++i) {
      const MeetingOutcome o = run_walk(
          env, cfg, mode, split_stream(master_seed, static_cast<std::uint64_t>(i)));
      const double t_eff =
          o.kind == OutcomeKind::Met ? o.time : cfg.t_max;
      for (std::size_t k = 0; k < g; ++k)
        if (t_eff > t_grid[k] || o.kind != OutcomeKind::Met) ++local[k];
      if (o.kind == OutcomeKind::Boundary) ++local_boundary;
      if (o.kind == OutcomeKind::Censored) ++local_censored;
    }
#pragma omp critical
    {
      for (std::size_t k = 0; k < g; ++k) survived[k] += local[k];
      n_boundary += local_boundary;
      n_censored += local_censored;
    }
  }

  return aggregate(t_grid, survived, n_replicas, master_seed, n_boundary,
                   n_censored);
}

SurvivalCurve survival_curve_serial(const Environment& env,
                                    const WalkerConfig& cfg, MeetingMode mode,
                                    const std::vector<double>& t_grid,
                                    std::uint64_t n_replicas,
                                    std::uint64_t master_seed) {
  cfg.validate(env);
  check_grid(cfg, t_grid, n_replicas);

  const std::size_t g = t_grid.size();
  std::vector<std::uint64_t> survived(g, 0);
  std::uint64_t n_boundary = 0, n_censored = 0;
  for (std::uint64_t i = 0; i < n_replicas; ++i) {
    const MeetingOutcome o = run_walk(env, cfg, mode, split_stream(master_seed, i));
    for (std::size_t k = 0; k < g; ++k)
      if ((o.kind == OutcomeKind::Met && o.time > t_grid[k]) ||
          o.kind != OutcomeKind::Met)
        ++survived[k];
    if (o.kind == OutcomeKind::Boundary) ++n_boundary;
    if (o.kind == OutcomeKind::Censored) ++n_censored;
  }
  return aggregate(t_grid, survived, n_replicas, master_seed, n_boundary,
                   n_censored);
}

}  // namespace rwre::sim

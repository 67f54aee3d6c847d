#ifndef RWRE_ENVIRONMENT_HPP
#define RWRE_ENVIRONMENT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "rwre/path.hpp"

namespace rwre {

enum class LawKind { BernoulliSymmetric, UniformLogRatio, CustomTable };

std::string law_kind_name(LawKind kind);
LawKind law_kind_from_name(const std::string& name);

struct TableEntry {
  double wp = 1.0;
  double wm = 1.0;
  double prob = 1.0;
};

// Marginal law of one (w+, w-) pair. The recurrence condition (zero-mean
// log rate ratio) and the ellipticity bound are checked symbolically per kind.
//
// bernoulli-symmetric: (w+, w-) = (rho, 1/rho) or (1/rho, rho), equiprobable.
//   Log ratio is +-2 ln rho, sigma^2 = 4 ln^2 rho. Needs kappa >= rho.
// uniform-logratio: ln(w+/w-) ~ U[-ln rho, ln rho], w+- = e^{+-L/2}.
//   sigma^2 = ln^2 rho / 3. Needs kappa >= sqrt(rho).
// custom-table: explicit finite table; mean log ratio must be 0.
struct EnvironmentLaw {
  LawKind kind = LawKind::BernoulliSymmetric;
  double rho = 0.0;    // log-ratio magnitude parameter, > 1
  double kappa = 0.0;  // ellipticity bound, > 1
  std::vector<TableEntry> table;

  static EnvironmentLaw bernoulli(double rho, double kappa);
  static EnvironmentLaw uniform_logratio(double rho, double kappa);
  static EnvironmentLaw custom(std::vector<TableEntry> table, double kappa);

  // Throws ConfigError when the parameters cannot satisfy the recurrence or
  // ellipticity conditions.
  void validate() const;

  // Largest rate the law can produce (for the feasibility check).
  double max_rate() const;
};

struct Site {
  double wp = 1.0;  // jump rate y -> y+1
  double wm = 1.0;  // jump rate y -> y-1 (inactive at y = 0)
};

struct Environment {
  EnvironmentLaw law;
  double kappa = 0.0;
  std::uint64_t seed = 0;
  std::vector<Site> sites;

  std::int64_t n_sites() const { return static_cast<std::int64_t>(sites.size()); }
};

struct ConditionReport {
  double mean_log_ratio = 0.0;  // symbolic E ln(w+/w-)
  double sigma2 = 0.0;          // symbolic E ln^2(w+/w-)
  bool kappa_feasible = false;  // kappa > 1 and all producible rates in [1/kappa, kappa]
  bool sinai_ok = false;        // mean 0 and sigma2 in (0, inf)
};

// I.i.d. site draws from the law; deterministic given (law, n_sites, seed).
Environment gen_environment(const EnvironmentLaw& law, std::int64_t n_sites,
                            std::uint64_t seed);

// V(x) = sum_{i<x} ln(w-_i / w+_i), V(0) = 0. Length n_sites + 1, step 1.
Path potential(const Environment& env);

// Brownian path: values[0] = 0, independent Gaussian increments with
// variance sigma2 * step. Deterministic per seed.
Path sample_brownian(double sigma2, double step, std::int64_t length,
                     std::uint64_t seed);

ConditionReport validate_conditions(const EnvironmentLaw& law);

}  // namespace rwre

#endif  // RWRE_ENVIRONMENT_HPP

#include "rwre/environment.hpp"

#include <cmath>

#include "rwre/errors.hpp"
#include "rwre/rng.hpp"

namespace rwre {

std::string law_kind_name(LawKind kind) {
  switch (kind) {
    case LawKind::BernoulliSymmetric:
      return "bernoulli-symmetric";
    case LawKind::UniformLogRatio:
      return "uniform-logratio";
    case LawKind::CustomTable:
      return "custom-table";
  }
  return "unknown";
}

LawKind law_kind_from_name(const std::string& name) {
  if (name == "bernoulli-symmetric" || name == "bernoulli")
    return LawKind::BernoulliSymmetric;
  if (name == "uniform-logratio" || name == "uniform")
    return LawKind::UniformLogRatio;
  if (name == "custom-table" || name == "custom") return LawKind::CustomTable;
  throw ConfigError("unknown environment law: " + name);
}

EnvironmentLaw EnvironmentLaw::bernoulli(double rho, double kappa) {
  EnvironmentLaw law;
  law.kind = LawKind::BernoulliSymmetric;
  law.rho = rho;
  law.kappa = kappa;
  law.validate();
  return law;
}

EnvironmentLaw EnvironmentLaw::uniform_logratio(double rho, double kappa) {
  EnvironmentLaw law;
  law.kind = LawKind::UniformLogRatio;
  law.rho = rho;
  law.kappa = kappa;
  law.validate();
  return law;
}

EnvironmentLaw EnvironmentLaw::custom(std::vector<TableEntry> table,
                                      double kappa) {
  EnvironmentLaw law;
  law.kind = LawKind::CustomTable;
  law.table = std::move(table);
  law.kappa = kappa;
  law.validate();
  return law;
}

double EnvironmentLaw::max_rate() const {
  switch (kind) {
    case LawKind::BernoulliSymmetric:
      return rho;
    case LawKind::UniformLogRatio:
      return std::sqrt(rho);
    case LawKind::CustomTable: {
      double m = 0.0;
      for (const auto& e : table) m = std::max({m, e.wp, e.wm});
      return m;
    }
  }
  return 0.0;
}

void EnvironmentLaw::validate() const {
  if (!(kappa > 1.0))
    throw ConfigError("Condition B requires kappa > 1 (got kappa = " +
                      std::to_string(kappa) + ")");
  if (kind == LawKind::CustomTable) {
    if (table.empty()) throw ConfigError("custom-table law needs entries");
    double psum = 0.0, mean = 0.0;
    for (const auto& e : table) {
      if (!(e.wp > 0.0) || !(e.wm > 0.0) || !(e.prob >= 0.0))
        throw ConfigError("custom-table entries need positive rates");
      if (e.wp > kappa || e.wp < 1.0 / kappa || e.wm > kappa ||
          e.wm < 1.0 / kappa)
        throw ConfigError("custom-table rate outside [1/kappa, kappa]");
      psum += e.prob;
      mean += e.prob * std::log(e.wp / e.wm);
    }
    if (std::abs(psum - 1.0) > 1e-12)
      throw ConfigError("custom-table probabilities must sum to 1");
    if (std::abs(mean) > 1e-12)
      throw ConfigError("custom-table mean log-ratio must be 0 (Condition S)");
    return;
  }
  if (!(rho > 1.0))
    throw ConfigError("law parameter rho must exceed 1 (got rho = " +
                      std::to_string(rho) + ")");
  if (max_rate() > kappa * (1.0 + 1e-15))
    throw ConfigError(
        "Condition B unsatisfiable: producible rates exceed kappa");
}

Environment gen_environment(const EnvironmentLaw& law, std::int64_t n_sites,
                            std::uint64_t seed) {
  law.validate();
  if (n_sites < 2) throw ConfigError("environment needs at least 2 sites");

  Environment env;
  env.law = law;
  env.kappa = law.kappa;
  env.seed = seed;
  env.sites.resize(static_cast<std::size_t>(n_sites));

  Rng rng(split_stream(seed, 0));
  switch (law.kind) {
    case LawKind::BernoulliSymmetric: {
      const double inv = 1.0 / law.rho;
      for (auto& s : env.sites) {
        if (rng.uniform() < 0.5) {
          s.wp = law.rho;
          s.wm = inv;
        } else {
          s.wp = inv;
          s.wm = law.rho;
        }
      }
      break;
    }
    case LawKind::UniformLogRatio: {
      const double half = std::log(law.rho);
      for (auto& s : env.sites) {
        const double logratio = (2.0 * rng.uniform() - 1.0) * half;
        s.wp = std::exp(0.5 * logratio);
        s.wm = 1.0 / s.wp;
      }
      break;
    }
    case LawKind::CustomTable: {
      for (auto& s : env.sites) {
        double u = rng.uniform();
        for (const auto& e : law.table) {
          if (u < e.prob || &e == &law.table.back()) {
            s.wp = e.wp;
            s.wm = e.wm;
            break;
          }
          u -= e.prob;
        }
      }
      break;
    }
  }
  return env;
}

Path potential(const Environment& env) {
  Path p;
  p.step = 1.0;
  p.values.resize(static_cast<std::size_t>(env.n_sites()) + 1);
  p.values[0] = 0.0;
  for (std::size_t i = 0; i < env.sites.size(); ++i)
    p.values[i + 1] = p.values[i] + std::log(env.sites[i].wm / env.sites[i].wp);
  return p;
}

Path sample_brownian(double sigma2, double step, std::int64_t length,
                     std::uint64_t seed) {
  if (!(sigma2 > 0.0)) throw ConfigError("sample_brownian: sigma2 must be > 0");
  if (!(step > 0.0)) throw ConfigError("sample_brownian: step must be > 0");
  if (length < 1) throw ConfigError("sample_brownian: length must be >= 1");

  Path p;
  p.step = step;
  p.sigma2 = sigma2;
  p.values.resize(static_cast<std::size_t>(length));
  p.values[0] = 0.0;
  const double sd = std::sqrt(sigma2 * step);
  Rng rng(split_stream(seed, 0));
  for (std::size_t i = 1; i < p.values.size(); ++i)
    p.values[i] = p.values[i - 1] + sd * rng.normal();
  return p;
}

ConditionReport validate_conditions(const EnvironmentLaw& law) {
  ConditionReport r;
  switch (law.kind) {
    case LawKind::BernoulliSymmetric: {
      const double lr = 2.0 * std::log(law.rho);
      r.mean_log_ratio = 0.0;
      r.sigma2 = lr * lr;
      break;
    }
    case LawKind::UniformLogRatio: {
      const double half = std::log(law.rho);
      r.mean_log_ratio = 0.0;
      r.sigma2 = half * half / 3.0;
      break;
    }
    case LawKind::CustomTable: {
      double mean = 0.0, m2 = 0.0;
      for (const auto& e : law.table) {
        const double lr = std::log(e.wp / e.wm);
        mean += e.prob * lr;
        m2 += e.prob * lr * lr;
      }
      r.mean_log_ratio = mean;
      r.sigma2 = m2;
      break;
    }
  }
  r.kappa_feasible = law.kappa > 1.0 && law.max_rate() <= law.kappa * (1.0 + 1e-15);
  r.sinai_ok = std::abs(r.mean_log_ratio) <= 1e-12 && r.sigma2 > 0.0 &&
               std::isfinite(r.sigma2);
  return r;
}

}  // namespace rwre

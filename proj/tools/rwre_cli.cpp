// rwre: command-line front end for environment generation, landscape
// analysis, Monte Carlo meeting times, and the theorem-level experiments.
//
// Exit codes: 0 success, 2 configuration error, 3 numerical-feasibility
// error. All times are supplied as ln t (--lnt), except the simulate time
// grid, which covers small horizons and starts at 0.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rwre/cascade.hpp"
#include "rwre/environment.hpp"
#include "rwre/errors.hpp"
#include "rwre/json_io.hpp"
#include "rwre/landscape.hpp"
#include "rwre/lawcheck.hpp"
#include "rwre/oracle.hpp"
#include "rwre/rng.hpp"
#include "rwre/sha256.hpp"
#include "rwre/simulate.hpp"

namespace {

constexpr const char* kVersion = "0.1.0";

using namespace rwre;
using nlohmann::json;

// Echo of the full invocation, recorded in every manifest.
std::string join_args(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

struct ManifestWriter {
  io::RunManifest m;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  void add_output(const std::string& file) {
    m.outputs.emplace_back(file, sha256_file(file));
  }
  void finish(const std::string& primary_output) {
    m.version = std::string(kVersion) + " (" + kRngName + ")";
    m.wall_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    io::write_manifest(primary_output + ".manifest.json", m);
  }
};

EnvironmentLaw law_from_flags(const std::string& law, double rho, double kappa,
                              const std::string& table_file) {
  if (law == "bernoulli") return EnvironmentLaw::bernoulli(rho, kappa);
  if (law == "uniform") return EnvironmentLaw::uniform_logratio(rho, kappa);
  if (law == "custom") {
    if (table_file.empty())
      throw ConfigError("custom law requires --table FILE");
    std::ifstream in(table_file);
    if (!in) throw ConfigError("cannot read table file " + table_file);
    json j;
    in >> j;
    std::vector<TableEntry> table;
    for (const auto& row : j)
      table.push_back({row.at("wp").get<double>(), row.at("wm").get<double>(),
                       row.at("prob").get<double>()});
    return EnvironmentLaw::custom(table, kappa);
  }
  throw ConfigError("unknown law '" + law +
                    "' (expected bernoulli, uniform, or custom)");
}

// ---------------------------------------------------------------------------

struct GenEnvArgs {
  std::string law = "bernoulli";
  double rho = 0.0;
  double kappa = 0.0;
  std::string table_file;
  std::int64_t n = 0;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_gen_env(const GenEnvArgs& a, ManifestWriter& mw) {
  const EnvironmentLaw law = law_from_flags(a.law, a.rho, a.kappa, a.table_file);
  const Environment env = gen_environment(law, a.n, a.seed);
  io::write_env(a.out, env);
  mw.m.seed = a.seed;
  mw.add_output(a.out);
  mw.finish(a.out);
  std::printf("wrote %s (%lld sites)\n", a.out.c_str(),
              static_cast<long long>(env.n_sites()));
  return 0;
}

// ---------------------------------------------------------------------------

struct AnalyzeArgs {
  std::string env_file;
  std::string path_file;
  bool brownian = false;
  double sigma2 = 1.0;
  double step = 1e-3;
  std::int64_t length = 0;
  std::uint64_t seed = 0;
  double lnt = 0.0;
  int gamma = 2;
  bool cascade = false;
  double alpha = 0.5;
  bool diagnostics = false;
  std::string out;
};

int cmd_analyze(const AnalyzeArgs& a, ManifestWriter& mw) {
  const int sources = (!a.env_file.empty() ? 1 : 0) +
                      (!a.path_file.empty() ? 1 : 0) + (a.brownian ? 1 : 0);
  if (sources != 1)
    throw ConfigError(
        "analyze needs exactly one input: --env, --path, or --brownian");

  Path path;
  if (!a.env_file.empty()) {
    path = potential(io::read_env(a.env_file));
  } else if (!a.path_file.empty()) {
    path = io::read_path_csv(a.path_file);
  } else {
    if (a.length <= 1)
      throw ConfigError("--brownian requires --length > 1");
    path = sample_brownian(a.sigma2, a.step, a.length, a.seed);
  }

  json out;
  out["schema"] = 1;
  out["lnt"] = a.lnt;
  out["gamma"] = a.gamma;
  const auto dec = landscape::stable_points(path, a.lnt, path.size() - 1);
  out["decomposition"] = io::decomposition_to_json(dec);
  out["zeta"] = landscape::zeta(path, a.lnt, a.gamma);
  if (a.cascade) {
    const auto trace =
        landscape::construct_cascade(path, a.lnt, a.gamma, a.alpha);
    out["cascade"] = io::cascade_to_json(trace);
  }
  if (a.diagnostics) {
    const auto metrics = landscape::t_good_diagnostics(path, a.lnt, a.gamma);
    out["diagnostics"] = io::diagnostics_to_json(metrics);
  }

  io::write_text(a.out, out.dump(2) + "\n");
  mw.m.seed = a.seed;
  mw.add_output(a.out);
  mw.finish(a.out);
  std::printf("zeta_%d = %.12g\n", a.gamma, out["zeta"].get<double>());
  return 0;
}

// ---------------------------------------------------------------------------

struct SimulateArgs {
  std::string env_file;
  int gamma = 2;
  std::vector<std::int64_t> starts;
  std::string mode = "meeting";
  std::uint64_t replicas = 10000;
  std::vector<double> t_grid;
  double t_max = 0.0;
  std::uint64_t seed = 0;
  int workers = 0;
  std::string out;
};

int cmd_simulate(const SimulateArgs& a, ManifestWriter& mw) {
  const Environment env = io::read_env(a.env_file);
  sim::WalkerConfig cfg = sim::WalkerConfig::with_defaults(a.gamma, a.t_max);
  if (!a.starts.empty()) cfg.starts = a.starts;

  sim::MeetingMode mode;
  if (a.mode == "meeting")
    mode = sim::MeetingMode::FirstPair;
  else if (a.mode == "coalescing")
    mode = sim::MeetingMode::Coalescing;
  else if (a.mode == "simultaneous")
    mode = sim::MeetingMode::Simultaneous;
  else
    throw ConfigError("unknown --mode '" + a.mode +
                      "' (expected meeting, coalescing, or simultaneous)");

  const sim::SurvivalCurve curve = sim::survival_curve(
      env, cfg, mode, a.t_grid, a.replicas, a.seed, a.workers);
  io::write_survival_csv(a.out, curve);
  mw.m.seed = a.seed;
  mw.add_output(a.out);
  mw.finish(a.out);
  std::printf("wrote %s (%llu replicas, %llu censored, %llu boundary)\n",
              a.out.c_str(), static_cast<unsigned long long>(curve.n_replicas),
              static_cast<unsigned long long>(curve.n_censored),
              static_cast<unsigned long long>(curve.n_boundary));
  return 0;
}

// ---------------------------------------------------------------------------

// zeta of a Brownian path, extending the horizon until gamma t-stable points
// exist (longer paths with the same seed share the prefix).
double zeta_brownian(double lnt, int gamma, double sigma2, double step,
                     std::uint64_t seed) {
  auto len =
      static_cast<std::int64_t>(3.0 * gamma * lnt * lnt / (sigma2 * step));
  for (;;) {
    const Path p = sample_brownian(sigma2, step, len, seed);
    try {
      return landscape::zeta(p, lnt, gamma);
    } catch (const HorizonError&) {
      if (len > (std::int64_t{1} << 28)) throw;
      len *= 2;
    }
  }
}

struct Theorem3Args {
  int gamma = 2;
  std::uint64_t paths = 2000;
  std::vector<double> lnt = {6.0};
  double sigma2 = 1.0;
  double step = 1e-3;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_theorem3(const Theorem3Args& a, ManifestWriter& mw) {
  if (a.lnt.empty() || a.lnt.size() > 2)
    throw ConfigError("theorem3 takes one or two --lnt values");

  const double offset = static_cast<double>(a.gamma) * (a.gamma - 1) / 2.0;
  json out;
  out["schema"] = 1;
  out["gamma"] = a.gamma;
  out["n_paths"] = a.paths;
  out["lnt"] = a.lnt;

  std::vector<std::vector<double>> samples;
  for (std::size_t which = 0; which < a.lnt.size(); ++which) {
    std::vector<double> xs;
    xs.reserve(a.paths);
    for (std::uint64_t j = 0; j < a.paths; ++j)
      xs.push_back(zeta_brownian(a.lnt[which], a.gamma, a.sigma2, a.step,
                                 split_stream(a.seed + which, j)) -
                   offset);
    const auto rep = law::ks_statistic(
        xs, [&](double x) { return law::cdf_F(a.gamma, x); });
    out["reports"].push_back(io::gof_to_json(rep));
    samples.push_back(std::move(xs));
    std::printf("lnt=%g: KS D=%.4f p=%.4f\n", a.lnt[which], rep.ks_stat,
                rep.p_value);
  }
  if (samples.size() == 2) {
    const auto two = law::ks_two_sample(samples[0], samples[1]);
    out["two_sample"] = io::gof_to_json(two);
    std::printf("two-sample: KS D=%.4f p=%.4f\n", two.ks_stat, two.p_value);
  }

  io::write_text(a.out, out.dump(2) + "\n");
  mw.m.seed = a.seed;
  mw.add_output(a.out);
  mw.finish(a.out);
  return 0;
}

struct Theorem1Args {
  int gamma = 2;
  int n_envs = 20;
  std::string law = "bernoulli";
  double rho = std::exp(1.0);
  double kappa = std::exp(1.0);
  std::int64_t n_sites = 5000;
  std::vector<double> lnt_grid = {4.0, 6.0, 8.0, 10.0};
  std::int64_t L = 600;
  double tol = 1e-10;
  std::uint64_t seed = 0;
  std::string out;
};

int cmd_theorem1(const Theorem1Args& a, ManifestWriter& mw) {
  const EnvironmentLaw law = law_from_flags(a.law, a.rho, a.kappa, "");
  json out;
  out["schema"] = 1;
  out["gamma"] = a.gamma;
  out["lnt_grid"] = a.lnt_grid;
  out["L"] = a.L;
  out["tol"] = a.tol;

  std::vector<std::vector<double>> absdiff(a.lnt_grid.size());
  for (int i = 0; i < a.n_envs; ++i) {
    const std::uint64_t env_seed =
        split_stream(a.seed, static_cast<std::uint64_t>(i));
    const Environment env = gen_environment(law, a.n_sites, env_seed);
    const Path V = potential(env);

    json row;
    row["env_seed"] = env_seed;
    std::vector<double> ts;
    for (double l : a.lnt_grid) {
      row["zeta"].push_back(landscape::zeta(V, l, a.gamma));
      ts.push_back(std::exp(l));
    }
    const auto cfg = sim::WalkerConfig::with_defaults(a.gamma, 1.0);
    const auto res = oracle::exact_survival_multi(env, cfg, ts, a.L, a.tol);
    for (std::size_t k = 0; k < ts.size(); ++k) {
      const double e = -res[k].log_p / a.lnt_grid[k];
      row["e"].push_back(e);
      row["log_p"].push_back(res[k].log_p);
      absdiff[k].push_back(
          std::abs(e - row["zeta"][k].get<double>()));
    }
    out["environments"].push_back(std::move(row));
    std::printf("env %d/%d done\n", i + 1, a.n_envs);
  }

  for (auto& xs : absdiff) {
    std::sort(xs.begin(), xs.end());
    const std::size_t n = xs.size();
    out["median_abs_diff"].push_back(
        n % 2 == 1 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]));
  }

  io::write_text(a.out, out.dump(2) + "\n");
  mw.m.seed = a.seed;
  mw.add_output(a.out);
  mw.finish(a.out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"meeting times of random walks in random environment"};
  app.require_subcommand(1);

  GenEnvArgs ge;
  auto* gen = app.add_subcommand("gen-env", "draw an i.i.d. environment");
  gen->add_option("--law", ge.law, "bernoulli | uniform | custom");
  gen->add_option("--rho", ge.rho, "log-ratio magnitude (> 1)");
  gen->add_option("--kappa", ge.kappa, "ellipticity bound (> 1)");
  gen->add_option("--table", ge.table_file, "JSON table for --law custom");
  gen->add_option("--n", ge.n, "number of sites")->required();
  gen->add_option("--seed", ge.seed, "RNG seed");
  gen->add_option("-o,--out", ge.out, "output JSON file")->required();

  AnalyzeArgs an;
  auto* ana = app.add_subcommand("analyze", "landscape analysis of a path");
  ana->add_option("--env", an.env_file, "environment JSON (uses its potential)");
  ana->add_option("--path", an.path_file, "path CSV (x,value)");
  ana->add_flag("--brownian", an.brownian, "sample a Brownian path instead");
  ana->add_option("--sigma2", an.sigma2, "Brownian variance per unit length");
  ana->add_option("--step", an.step, "Brownian grid step");
  ana->add_option("--length", an.length, "Brownian grid points");
  ana->add_option("--seed", an.seed, "Brownian seed");
  ana->add_option("--lnt", an.lnt, "ln t")->required();
  ana->add_option("--gamma", an.gamma, "number of walks");
  ana->add_flag("--cascade", an.cascade, "emit the stability-scale cascade");
  ana->add_option("--alpha", an.alpha, "cascade starting scale a_0");
  ana->add_flag("--diagnostics", an.diagnostics, "emit t-goodness metrics");
  ana->add_option("-o,--out", an.out, "output JSON file")->required();

  SimulateArgs si;
  auto* simc = app.add_subcommand("simulate", "Monte Carlo survival curve");
  simc->add_option("--env", si.env_file, "environment JSON")->required();
  simc->add_option("--gamma", si.gamma, "number of walks");
  simc->add_option("--starts", si.starts, "start sites (default 0..gamma-1)")
      ->delimiter(',');
  simc->add_option("--mode", si.mode, "meeting | coalescing | simultaneous");
  simc->add_option("--replicas", si.replicas, "Monte Carlo replicas");
  simc->add_option("--t-grid", si.t_grid, "evaluation times (plain t)")
      ->delimiter(',')
      ->required();
  simc->add_option("--t-max", si.t_max, "censoring horizon")->required();
  simc->add_option("--seed", si.seed, "master seed");
  simc->add_option("--workers", si.workers, "replica threads (0 = default)");
  simc->add_option("-o,--out", si.out, "output CSV file")->required();

  auto* exp = app.add_subcommand("experiment", "theorem-level drivers");
  exp->require_subcommand(1);

  Theorem1Args t1;
  auto* e1 = exp->add_subcommand(
      "theorem1", "tail exponent e(t) against zeta over environments");
  e1->add_option("--gamma", t1.gamma, "number of walks");
  e1->add_option("--envs", t1.n_envs, "number of environments");
  e1->add_option("--law", t1.law, "bernoulli | uniform");
  e1->add_option("--rho", t1.rho, "law parameter");
  e1->add_option("--kappa", t1.kappa, "ellipticity bound");
  e1->add_option("--n-sites", t1.n_sites, "sites per environment");
  e1->add_option("--lnt-grid", t1.lnt_grid, "ln t grid")->delimiter(',');
  e1->add_option("--L", t1.L, "oracle truncation");
  e1->add_option("--tol", t1.tol, "oracle tolerance");
  e1->add_option("--seed", t1.seed, "master seed");
  e1->add_option("-o,--out", t1.out, "output JSON file")->required();

  Theorem3Args t3;
  auto* e3 = exp->add_subcommand(
      "theorem3", "zeta samples over Brownian paths against f_gamma");
  e3->add_option("--gamma", t3.gamma, "number of walks");
  e3->add_option("--paths", t3.paths, "Brownian paths per lnt");
  e3->add_option("--lnt", t3.lnt, "one or two ln t values")->delimiter(',');
  e3->add_option("--sigma2", t3.sigma2, "Brownian variance");
  e3->add_option("--step", t3.step, "Brownian grid step");
  e3->add_option("--seed", t3.seed, "master seed");
  e3->add_option("-o,--out", t3.out, "output JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  ManifestWriter mw;
  mw.m.config = join_args(argc, argv);
  try {
    if (gen->parsed()) {
      mw.m.command = "gen-env";
      return cmd_gen_env(ge, mw);
    }
    if (ana->parsed()) {
      mw.m.command = "analyze";
      return cmd_analyze(an, mw);
    }
    if (simc->parsed()) {
      mw.m.command = "simulate";
      return cmd_simulate(si, mw);
    }
    if (e1->parsed()) {
      mw.m.command = "experiment theorem1";
      return cmd_theorem1(t1, mw);
    }
    if (e3->parsed()) {
      mw.m.command = "experiment theorem3";
      return cmd_theorem3(t3, mw);
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const HorizonError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const FeasibilityError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 2;
}

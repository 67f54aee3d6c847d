#include "rwre/json_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include "rwre/errors.hpp"
#include "rwre/sha256.hpp"

namespace rwre::io {

using nlohmann::json;

namespace {

std::ifstream open_in(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open " + file + " for reading");
  return in;
}

std::ofstream open_out(const std::string& file) {
  std::ofstream out(file);
  if (!out) throw ConfigError("cannot open " + file + " for writing");
  return out;
}

}  // namespace

json env_to_json(const Environment& env) {
  json law;
  law["kind"] = law_kind_name(env.law.kind);
  law["rho"] = env.law.rho;
  if (env.law.kind == LawKind::CustomTable) {
    json table = json::array();
    for (const TableEntry& e : env.law.table)
      table.push_back({{"wp", e.wp}, {"wm", e.wm}, {"prob", e.prob}});
    law["table"] = table;
  }
  json sites = json::array();
  for (const Site& s : env.sites) sites.push_back({{"wp", s.wp}, {"wm", s.wm}});
  return json{{"schema", 1},
              {"law", law},
              {"kappa", env.kappa},
              {"seed", env.seed},
              {"sites", sites}};
}

Environment env_from_json(const json& j) {
  Environment env;
  const json& law = j.at("law");
  env.law.kind = law_kind_from_name(law.at("kind").get<std::string>());
  env.law.rho = law.value("rho", 0.0);
  env.law.kappa = j.at("kappa").get<double>();
  if (env.law.kind == LawKind::CustomTable) {
    for (const json& e : law.at("table"))
      env.law.table.push_back({e.at("wp").get<double>(),
                               e.at("wm").get<double>(),
                               e.at("prob").get<double>()});
  }
  env.kappa = env.law.kappa;
  env.seed = j.at("seed").get<std::uint64_t>();
  for (const json& s : j.at("sites"))
    env.sites.push_back({s.at("wp").get<double>(), s.at("wm").get<double>()});
  env.law.validate();
  return env;
}

void write_env(const std::string& path, const Environment& env) {
  auto out = open_out(path);
  out << env_to_json(env).dump(2) << '\n';
}

Environment read_env(const std::string& path) {
  auto in = open_in(path);
  json j;
  in >> j;
  return env_from_json(j);
}

void write_path_csv(const std::string& file, const Path& path) {
  auto out = open_out(file);
  out << "x,value\n" << std::setprecision(17);
  for (std::int64_t i = 0; i < path.size(); ++i)
    out << path.position(i) << ',' << path.values[static_cast<std::size_t>(i)]
        << '\n';
}

Path read_path_csv(const std::string& file) {
  auto in = open_in(file);
  std::string line;
  if (!std::getline(in, line) || line != "x,value")
    throw ConfigError(file + ": expected header 'x,value'");
  Path path;
  double prev_x = 0.0;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos)
      throw ConfigError(file + ": malformed row '" + line + "'");
    const double x = std::stod(line.substr(0, comma));
    path.values.push_back(std::stod(line.substr(comma + 1)));
    if (!first && path.values.size() == 2) path.step = x - prev_x;
    prev_x = x;
    first = false;
  }
  if (path.values.size() >= 2 && path.step <= 0.0)
    throw ConfigError(file + ": non-increasing x column");
  return path;
}

json decomposition_to_json(const landscape::StableDecomposition& dec) {
  return json{{"schema", 1},
              {"lnt", dec.lnt},
              {"x_max", dec.x_max},
              {"minima", dec.minima},
              {"peaks", dec.peaks}};
}

json cascade_to_json(const landscape::CascadeTrace& trace) {
  json levels = json::array();
  for (const landscape::CascadeLevel& lv : trace.levels) {
    json level{{"a", lv.a},        {"m", lv.m},
               {"m_prime", lv.m_prime}, {"h", lv.h},
               {"r", lv.r},        {"l", lv.l},
               {"case", lv.case_tag}};
    if (lv.case_tag != 0) {
      level["m_prime_stable"] = lv.m_prime_stable;
      level["m_gamma"] = lv.m_gamma;
      if (lv.m_gamma1 >= 0) level["m_gamma1"] = lv.m_gamma1;
      if (lv.h_gamma >= 0) level["h_gamma"] = lv.h_gamma;
    }
    levels.push_back(level);
  }
  return json{{"schema", 1},
              {"lnt", trace.lnt},
              {"gamma", trace.gamma},
              {"alpha", trace.alpha},
              {"N", trace.N},
              {"zeta", trace.zeta_from_trace()},
              {"levels", levels}};
}

json diagnostics_to_json(const landscape::TGoodMetrics& m) {
  return json{{"schema", 1},
              {"N", m.N},
              {"m_prime_terminal", m.m_prime_terminal},
              {"m_prime_first", m.m_prime_first},
              {"j_counts", m.j_counts},
              {"max_abs_w", m.max_abs_w},
              {"alpha", m.alpha},
              {"epsilon", m.epsilon}};
}

json survival_result_to_json(const oracle::SurvivalResult& r) {
  return json{{"schema", 1},
              {"t", r.t},
              {"p", r.p},
              {"log_p", r.log_p},
              {"boundary_mass", r.boundary_mass},
              {"L", r.L},
              {"tol", r.tol},
              {"matvecs", r.matvecs}};
}

json gof_to_json(const law::GoFReport& rep) {
  return json{{"schema", 1},
              {"n", rep.n},
              {"ks_stat", rep.ks_stat},
              {"p_value", rep.p_value},
              {"passed", rep.passed},
              {"level", rep.level}};
}

void write_survival_csv(const std::string& file, const sim::SurvivalCurve& c) {
  auto out = open_out(file);
  out << "t,p,stderr,n_replicas\n" << std::setprecision(17);
  for (std::size_t k = 0; k < c.t_grid.size(); ++k)
    out << c.t_grid[k] << ',' << c.p[k] << ',' << c.stderr_[k] << ','
        << c.n_replicas << '\n';
}

json manifest_to_json(const RunManifest& m) {
  json outputs = json::array();
  for (const auto& [file, digest] : m.outputs)
    outputs.push_back({{"file", file}, {"sha256", digest}});
  return json{{"schema", 1},
              {"command", m.command},
              {"config", m.config},
              {"seed", m.seed},
              {"version", m.version},
              {"wall_seconds", m.wall_seconds},
              {"outputs", outputs}};
}

void write_manifest(const std::string& file, const RunManifest& m) {
  auto out = open_out(file);
  out << manifest_to_json(m).dump(2) << '\n';
}

void write_text(const std::string& file, const std::string& text) {
  auto out = open_out(file);
  out << text;
}

}  // namespace rwre::io

#ifndef RWRE_JSON_IO_HPP
#define RWRE_JSON_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "rwre/cascade.hpp"
#include "rwre/environment.hpp"
#include "rwre/landscape.hpp"
#include "rwre/lawcheck.hpp"
#include "rwre/oracle.hpp"
#include "rwre/simulate.hpp"

namespace rwre::io {

// All JSON documents carry "schema": 1.

nlohmann::json env_to_json(const Environment& env);
Environment env_from_json(const nlohmann::json& j);
void write_env(const std::string& path, const Environment& env);
Environment read_env(const std::string& path);

// Path CSV: header "x,value", one row per grid point (x = index * step).
void write_path_csv(const std::string& file, const Path& path);
Path read_path_csv(const std::string& file);

nlohmann::json decomposition_to_json(const landscape::StableDecomposition& dec);
nlohmann::json cascade_to_json(const landscape::CascadeTrace& trace);
nlohmann::json diagnostics_to_json(const landscape::TGoodMetrics& m);
nlohmann::json survival_result_to_json(const oracle::SurvivalResult& r);
nlohmann::json gof_to_json(const law::GoFReport& rep);

// Survival CSV with the fixed header "t,p,stderr,n_replicas".
void write_survival_csv(const std::string& file, const sim::SurvivalCurve& c);

struct RunManifest {
  std::string command;
  std::string config;  // full flag echo
  std::uint64_t seed = 0;
  std::string version;
  double wall_seconds = 0.0;
  // (file name, sha256 hex digest) for every output of the run
  std::vector<std::pair<std::string, std::string>> outputs;
};

nlohmann::json manifest_to_json(const RunManifest& m);
void write_manifest(const std::string& file, const RunManifest& m);

void write_text(const std::string& file, const std::string& text);

}  // namespace rwre::io

#endif  // RWRE_JSON_IO_HPP

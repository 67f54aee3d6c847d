#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "rwre/json_io.hpp"
#include "rwre/sha256.hpp"

#include "helpers.hpp"

using namespace rwre;
using nlohmann::json;

namespace {

std::string tmp_file(const std::string& name) {
  return std::string("rwre_test_") + name;
}

std::string slurp(const std::string& file) {
  std::ifstream in(file);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("sha256 known vectors") {
  CHECK(sha256_hex("") ==
        "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") ==
        "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(sha256_hex(
            "abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq") ==
        "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
  // one full block boundary
  CHECK(sha256_hex(std::string(64, 'a')) ==
        "ffe054fe7ae0cb6dc65c3af9b61d5209f439851db43d0ba5997337df154668eb");
}

TEST_CASE("environment JSON roundtrip") {
  const auto law = EnvironmentLaw::bernoulli(std::exp(1.0), std::exp(1.0));
  const Environment env = gen_environment(law, 100, 7);
  const json j = io::env_to_json(env);
  CHECK(j.at("schema") == 1);
  CHECK(j.at("law").at("kind") == "bernoulli-symmetric");
  CHECK(j.at("sites").size() == 100);

  const Environment back = io::env_from_json(j);
  REQUIRE(back.sites.size() == env.sites.size());
  for (std::size_t i = 0; i < env.sites.size(); ++i) {
    CHECK(back.sites[i].wp == env.sites[i].wp);
    CHECK(back.sites[i].wm == env.sites[i].wm);
  }
  CHECK(back.seed == env.seed);
  CHECK(back.kappa == env.kappa);

  const std::string file = tmp_file("env.json");
  io::write_env(file, env);
  const Environment again = io::read_env(file);
  CHECK(again.sites.size() == env.sites.size());
  CHECK(sha256_file(file) == sha256_hex(slurp(file)));
  std::remove(file.c_str());
}

TEST_CASE("path CSV roundtrip") {
  const Path p = test::random_path(50, 9, 1.0, 0.25);
  const std::string file = tmp_file("path.csv");
  io::write_path_csv(file, p);

  std::ifstream in(file);
  std::string header;
  std::getline(in, header);
  CHECK(header == "x,value");

  const Path back = io::read_path_csv(file);
  REQUIRE(back.size() == p.size());
  CHECK(back.step == p.step);
  for (std::int64_t i = 0; i < p.size(); ++i)
    CHECK(back.values[static_cast<std::size_t>(i)] ==
          p.values[static_cast<std::size_t>(i)]);
  std::remove(file.c_str());
}

TEST_CASE("survival CSV format contract") {
  sim::SurvivalCurve c;
  c.t_grid = {0.0, 1.0};
  c.p = {1.0, 0.5};
  c.stderr_ = {0.0, 0.05};
  c.n_replicas = 100;
  const std::string file = tmp_file("surv.csv");
  io::write_survival_csv(file, c);
  const std::string text = slurp(file);
  CHECK(text.rfind("t,p,stderr,n_replicas\n", 0) == 0);
  CHECK(text.find("0,1,0,100") != std::string::npos);
  std::remove(file.c_str());
}

TEST_CASE("analysis records carry schema fields") {
  const Path p = test::random_path(3000, 21);
  const auto dec = landscape::stable_points(p, 5.0, p.size() - 1);
  const json dj = io::decomposition_to_json(dec);
  CHECK(dj.at("schema") == 1);
  CHECK(dj.at("minima").size() == dec.minima.size());

  const auto trace = landscape::construct_cascade(p, 5.0, 2, 0.4);
  const json cj = io::cascade_to_json(trace);
  CHECK(cj.at("schema") == 1);
  CHECK(cj.at("N") == trace.N);
  CHECK(cj.at("levels").size() == trace.levels.size());
  CHECK(cj.at("zeta").get<double>() ==
        doctest::Approx(landscape::zeta(p, 5.0, 2)).epsilon(1e-12));

  law::GoFReport rep;
  rep.n = 10;
  rep.ks_stat = 0.1;
  rep.p_value = 0.5;
  rep.passed = true;
  const json gj = io::gof_to_json(rep);
  CHECK(gj.at("schema") == 1);
  CHECK(gj.at("passed") == true);
}

TEST_CASE("manifest digests outputs") {
  io::RunManifest m;
  m.command = "gen-env";
  m.config = "--law bernoulli";
  m.seed = 7;
  m.version = "test";
  m.outputs.emplace_back("env.json", sha256_hex("payload"));
  const json j = io::manifest_to_json(m);
  CHECK(j.at("schema") == 1);
  CHECK(j.at("outputs").size() == 1);
  CHECK(j.at("outputs")[0].at("sha256") == sha256_hex("payload"));
}

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "kmlab/config.hpp"
#include "kmlab/experiment.hpp"
#include "kmlab/summability.hpp"

using namespace kmlab;
using nlohmann::json;

namespace {

std::string minimal_config() {
  return json{
      {"problem", json{{"kind", "monotone"}, {"name", "scaled-identity"}, {"r", 1.0}, {"dim", 1}}},
      {"schedule", json{{"lambda", 1.0}, {"c", 1.0}}},
      {"x0", {4.0}},
      {"horizon", 50},
  }.dump();
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("minimal config parses") {
  const ConfigParseResult r = parse_config(minimal_config());
  REQUIRE(r.ok());
  CHECK(r.config->monotone);
  CHECK(r.config->horizon == 50);
}

TEST_CASE("malformed JSON reports the line") {
  const ConfigParseResult r = parse_config("{\n  \"problem\": {,}\n}");
  REQUIRE_FALSE(r.ok());
  CHECK(r.errors.size() == 1);
  CHECK(r.errors[0].find("line 2") != std::string::npos);
}

TEST_CASE("all validation errors are collected, not just the first") {
  json cfg = json::parse(minimal_config());
  cfg["horizon"] = -3;
  cfg["certificates"] = {"quasi-fejer", "no-such-certificate"};
  cfg["x0"] = {1.0, 2.0, 3.0};  // wrong dimension
  const ConfigParseResult r = parse_config(cfg.dump());
  REQUIRE_FALSE(r.ok());
  CHECK(r.errors.size() >= 3);
}

TEST_CASE("unknown certificate names are rejected at parse time") {
  json cfg = json::parse(minimal_config());
  cfg["certificates"] = {"quasi-fejer-typo"};
  const ConfigParseResult r = parse_config(cfg.dump());
  REQUIRE_FALSE(r.ok());
  CHECK(r.errors[0].find("quasi-fejer-typo") != std::string::npos);
}

TEST_CASE("decreasing c contradicts a declared flag") {
  json cfg = json::parse(minimal_config());
  cfg["schedule"] = json{{"lambda", 1.0},
                         {"c", json{{"kind", "harmonic"}, {"scale", 1.0}}},
                         {"declared", {"c-nondecreasing"}}};
  const ConfigParseResult r = parse_config(cfg.dump());
  REQUIRE_FALSE(r.ok());
  CHECK(r.errors[0].find("c-nondecreasing") != std::string::npos);
}

TEST_CASE("certificates needing a zero set are rejected when the problem lacks one") {
  json cfg = json::parse(minimal_config());
  // Inconsistent affine-quadratic system: empty zero set.
  cfg["problem"] = json{{"kind", "monotone"},
                        {"name", "affine-quadratic"},
                        {"Q", {{1.0, 0.0}, {0.0, 0.0}}},
                        {"b", {0.0, 1.0}}};
  cfg["x0"] = {1.0, 1.0};
  cfg["certificates"] = {"quasi-fejer"};
  const ConfigParseResult r = parse_config(cfg.dump());
  REQUIRE_FALSE(r.ok());
  bool found = false;
  for (const auto& e : r.errors) found = found || e.find("fixed/zero set") != std::string::npos;
  CHECK(found);
}

TEST_CASE("random elements require a seed") {
  json cfg = json::parse(minimal_config());
  cfg["schedule"]["eta"] = 0.125;
  cfg["schedule"]["error"] = json{{"direction", "random"}};
  const ConfigParseResult r = parse_config(cfg.dump());
  REQUIRE_FALSE(r.ok());
  CHECK(r.errors[0].find("seed") != std::string::npos);
  cfg["seed"] = 7;
  CHECK(parse_config(cfg.dump()).ok());
}

TEST_CASE("soft-threshold experiment: trace terminates, certificates pass") {
  json cfg = json::parse(minimal_config());
  cfg["problem"] = json{{"kind", "monotone"}, {"name", "l1"}, {"weight", 1.0}, {"dim", 1}};
  cfg["x0"] = {3.0};
  cfg["certificates"] = {"quasi-fejer", "scaled-residual-monotone", "cluster-inclusion",
                         "linear-rate", "residual-summability"};
  const ConfigParseResult r = parse_config(cfg.dump());
  REQUIRE(r.ok());
  const ExperimentResult result = run_experiment(*r.config);
  CHECK(result.trace.final_iterate()[0] == 0.0);
  CHECK(result.all_passed());
  CHECK(result.certificates.size() == 5);
}

TEST_CASE("harmonic error magnitudes: certificates pass, probe flags the hypothesis") {
  json cfg = json::parse(minimal_config());
  cfg["schedule"] = json{{"lambda", 1.0}, {"c", 1.0},
                         {"eta", json{{"kind", "harmonic"}, {"scale", 1.0}}},
                         {"error", json{{"direction", "fixed"}, {"vector", {1.0}}}},
                         {"declared", {"sum-eta-e-finite"}}};
  cfg["horizon"] = 2000;
  cfg["certificates"] = {"quasi-fejer"};
  const ConfigParseResult r = parse_config(cfg.dump());
  REQUIRE(r.ok());
  const ExperimentResult result = run_experiment(*r.config);
  CHECK(result.all_passed());
  CHECK(result.summability.verdicts.at("declared:sum-eta-e-finite").status ==
        HypothesisStatus::violated);
}

TEST_CASE("lambda = 0 config: constant trace, trivially green") {
  json cfg = json::parse(minimal_config());
  cfg["schedule"] = json{{"lambda", 0.0}, {"c", 1.0}};
  cfg["certificates"] = {"quasi-fejer", "cluster-inclusion"};
  cfg["tolerances"] = json{{"cluster-inclusion", 10.0}};  // constant trace stays at x0
  const ConfigParseResult r = parse_config(cfg.dump());
  REQUIRE(r.ok());
  const ExperimentResult result = run_experiment(*r.config);
  for (const auto& rec : result.trace.records) CHECK(rec.x[0] == 4.0);
  CHECK(result.all_passed());
}

TEST_CASE("export writes four files and replays byte-identically") {
  const auto dir1 = std::filesystem::temp_directory_path() / "kmlab-test-out1";
  const auto dir2 = std::filesystem::temp_directory_path() / "kmlab-test-out2";
  std::filesystem::remove_all(dir1);
  std::filesystem::remove_all(dir2);

  json cfg = json::parse(minimal_config());
  cfg["schedule"]["eta"] = json{{"kind", "geometric"}, {"base", 0.25}, {"ratio", 0.5}};
  cfg["schedule"]["error"] = json{{"direction", "random"}};
  cfg["seed"] = 99;
  cfg["certificates"] = {"quasi-fejer"};
  const ConfigParseResult r = parse_config(cfg.dump());
  REQUIRE(r.ok());

  const ExperimentResult res1 = run_experiment(*r.config);
  const ExperimentResult res2 = run_experiment(*r.config);
  export_outputs(res1, *r.config, dir1.string());
  export_outputs(res2, *r.config, dir2.string());

  for (const char* name : {"trace.csv", "certificates.json", "summability.json", "manifest.json"}) {
    CAPTURE(name);
    REQUIRE(std::filesystem::exists(dir1 / name));
    CHECK(read_file(dir1 / name) == read_file(dir2 / name));
  }

  // CSV floats reconstruct the iterates exactly.
  const std::string csv = read_file(dir1 / "trace.csv");
  std::istringstream lines(csv);
  std::string header, first;
  std::getline(lines, header);
  std::getline(lines, first);
  std::istringstream cells(first);
  std::string cell;
  std::getline(cells, cell, ',');  // k
  std::getline(cells, cell, ',');  // x0
  CHECK(std::stod(cell) == res1.trace.records[0].x[0]);

  std::filesystem::remove_all(dir1);
  std::filesystem::remove_all(dir2);
}

TEST_CASE("manifest carries the config hash and seed") {
  json cfg = json::parse(minimal_config());
  cfg["seed"] = 123;
  const ConfigParseResult r = parse_config(cfg.dump());
  REQUIRE(r.ok());
  const auto dir = std::filesystem::temp_directory_path() / "kmlab-test-manifest";
  std::filesystem::remove_all(dir);
  export_outputs(run_experiment(*r.config), *r.config, dir.string());
  const json manifest = json::parse(read_file(dir / "manifest.json"));
  CHECK(manifest["seed"] == 123);
  CHECK(manifest["config_hash"] == config_hash(r.config->raw));
  std::filesystem::remove_all(dir);
}

TEST_CASE("stability certificate is wired through the experiment runner") {
  json cfg = json::parse(minimal_config());
  cfg["schedule"]["eta"] = json{{"kind", "geometric"}, {"base", 0.5}, {"ratio", 0.5}};
  cfg["schedule"]["error"] = json{{"direction", "fixed"}, {"vector", {1.0}}};
  cfg["probes"] = {0, 10, 25, 40};
  cfg["certificates"] = {"stability"};
  const ConfigParseResult r = parse_config(cfg.dump());
  REQUIRE(r.ok());
  const ExperimentResult result = run_experiment(*r.config);
  REQUIRE(result.certificates.size() == 1);
  CHECK(result.certificates[0].passed());
  CHECK(result.certificates[0].metrics.at("deviation_sum") == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("sampling certificates run through the experiment runner") {
  json cfg = json::parse(minimal_config());
  cfg["problem"]["dim"] = 2;
  cfg["x0"] = {4.0, -1.0};
  cfg["seed"] = 31;
  cfg["certificates"] = {"subreg-transfer", "resolvent-rescale", "resolvent-firm", "contraction"};
  const ConfigParseResult r = parse_config(cfg.dump());
  REQUIRE(r.ok());
  const ExperimentResult result = run_experiment(*r.config);
  REQUIRE(result.certificates.size() == 4);
  for (const auto& c : result.certificates) {
    CAPTURE(c.name);
    CHECK(c.passed());
  }
  // Empirical witness path: measured modulus of Id - J_1 on the identity is 2.
  CHECK(result.certificates[0].metrics.at("measured_kappa_prime") ==
        doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("cli binary exit codes: 0 pass, 1 certificate failure, 2 config error") {
  namespace fs = std::filesystem;
  const fs::path base = fs::temp_directory_path() / "kmlab-exitcodes";
  fs::remove_all(base);
  fs::create_directories(base);
  const std::string cli = KMLAB_CLI_PATH;

  auto run_cli = [&](const std::string& args) {
    const int raw = std::system((cli + " " + args + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(raw);
  };

  // Passing run.
  json ok_cfg = json::parse(minimal_config());
  ok_cfg["certificates"] = {"quasi-fejer"};
  std::ofstream(base / "ok.json") << ok_cfg.dump();
  CHECK(run_cli((base / "ok.json").string() + " --out " + (base / "out-ok").string()) == 0);

  // Failing certificate: persistent error keeps the iterate off the zero set.
  json fail_cfg = json::parse(minimal_config());
  fail_cfg["schedule"]["eta"] = 0.5;
  fail_cfg["schedule"]["error"] = json{{"direction", "fixed"}, {"vector", {1.0}}};
  fail_cfg["certificates"] = {"cluster-inclusion"};
  std::ofstream(base / "fail.json") << fail_cfg.dump();
  CHECK(run_cli((base / "fail.json").string() + " --out " + (base / "out-fail").string()) == 1);

  // Config errors.
  std::ofstream(base / "bad.json") << "{ not json";
  CHECK(run_cli((base / "bad.json").string()) == 2);
  CHECK(run_cli((base / "missing.json").string()) == 2);

  fs::remove_all(base);
}

TEST_CASE("operator problems run through the km engine") {
  json cfg{
      {"problem", json{{"kind", "operator"}, {"name", "rotation"}, {"theta", 1.5707963267948966}}},
      {"schedule", json{{"lambda", 0.5}, {"c", 1.0}}},
      {"x0", {1.0, 0.0}},
      {"horizon", 40},
      {"certificates", {"quasi-fejer", "linear-rate"}},
  };
  const ConfigParseResult r = parse_config(cfg.dump());
  REQUIRE(r.ok());
  const ExperimentResult result = run_experiment(*r.config);
  CHECK(result.trace.kind == "km");
  CHECK(result.all_passed());
}

}  // TEST_SUITE

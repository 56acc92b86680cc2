#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "kmlab/errors.hpp"
#include "kmlab/experiment.hpp"

namespace {

int run(const std::string& config_path, const std::optional<std::uint64_t>& seed_override,
        const std::optional<int>& horizon_override, const std::string& out_flag, bool quiet) {
  std::ifstream f(config_path);
  if (!f) {
    std::cerr << "error: cannot read config file " << config_path << "\n";
    return 2;
  }
  std::stringstream buffer;
  buffer << f.rdbuf();

  kmlab::ConfigParseResult parsed = kmlab::parse_config(buffer.str());
  if (!parsed.ok()) {
    for (const std::string& e : parsed.errors) std::cerr << "error: " << e << "\n";
    return 2;
  }
  kmlab::ExperimentConfig cfg = *parsed.config;
  if (seed_override) {
    cfg.seed = *seed_override;
    cfg.seed_given = true;
    cfg.raw["seed"] = *seed_override;
  }
  if (horizon_override) {
    if (*horizon_override < 1) {
      std::cerr << "error: --horizon must be >= 1\n";
      return 2;
    }
    cfg.horizon = *horizon_override;
    cfg.raw["horizon"] = *horizon_override;
  }

  // Output dir precedence: --out flag, config, KMLAB_OUT_DIR, ./kmlab-out.
  std::string out_dir = out_flag;
  if (out_dir.empty()) out_dir = cfg.out_dir;
  if (out_dir.empty()) {
    if (const char* env = std::getenv("KMLAB_OUT_DIR")) out_dir = env;
  }
  if (out_dir.empty()) out_dir = "kmlab-out";

  kmlab::ExperimentResult result;
  std::vector<std::string> files;
  try {
    result = kmlab::run_experiment(cfg);
    files = kmlab::export_outputs(result, cfg, out_dir);
  } catch (const kmlab::io_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const kmlab::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  if (!quiet) {
    if (result.trace.aborted) {
      std::cout << "trace aborted at k = " << result.trace.abort_index
                << " (partial outputs written)\n";
    }
    for (const std::string& w : result.trace.warnings) std::cout << "warning: " << w << "\n";
    for (const auto& c : result.certificates) {
      std::cout << c.name << ": " << kmlab::to_string(c.verdict);
      if (c.verdict != kmlab::Certificate::Verdict::not_applicable) {
        std::cout << " (worst slack " << c.worst_slack << ")";
      } else {
        std::cout << " (" << c.na_reason << ")";
      }
      std::cout << "\n";
    }
    for (const std::string& file : files) std::cout << "wrote " << file << "\n";
  }
  return result.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fixed-point iteration lab: relaxed Krasnosel'skii-Mann and generalized "
               "proximal runs with machine-checked inequality certificates"};

  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> horizon;
  std::string out_dir;
  bool quiet = false;

  app.add_option("config", config_path, "Experiment config (JSON)")->required();
  app.add_option("--seed", seed, "Override the config seed");
  app.add_option("--horizon", horizon, "Override the config horizon");
  app.add_option("--out", out_dir, "Output directory");
  app.add_flag("--quiet", quiet, "Suppress progress output");

  CLI11_PARSE(app, argc, argv);
  try {
    return run(config_path, seed, horizon, out_dir, quiet);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

#ifndef KMLAB_CONFIG_HPP
#define KMLAB_CONFIG_HPP

#include <cstdint>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "kmlab/point.hpp"

namespace kmlab {

/// A validated experiment description.  See parse_config for the document
/// format.
struct ExperimentConfig {
  nlohmann::json problem;  // catalog spec, with "kind": "monotone" | "operator"
  bool monotone = false;
  nlohmann::json schedule_spec;
  std::optional<Point> x0;       // explicit start point, or
  bool x0_random = false;        // seeded Gaussian start
  double x0_random_scale = 1.0;
  int horizon = 100;
  std::vector<int> probes;  // translated-run start indices; empty = defaults
  std::vector<std::string> certificates;
  std::map<std::string, double> tolerances;
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string out_dir;  // from the config; CLI flags may override
  nlohmann::json raw;   // the full document, for hashing/replay

  double tolerance_or(const std::string& key, double fallback) const {
    auto it = tolerances.find(key);
    return it == tolerances.end() ? fallback : it->second;
  }
};

struct ConfigParseResult {
  std::optional<ExperimentConfig> config;
  std::vector<std::string> errors;  // every validation failure, not just the first

  bool ok() const { return config.has_value() && errors.empty(); }
};

/// Certificate names accepted in the "certificates" list.
const std::vector<std::string>& known_certificate_names();

/// Parses and validates a JSON experiment config.  Collects all validation
/// errors; on malformed JSON the single error carries line information.
///
/// Document shape:
///   {
///     "problem":   {"kind": "monotone"|"operator", ...catalog spec...},
///     "schedule":  {"lambda": f, "c": f, "eta": f, "error": {...}, "declared": [...]},
///     "x0":        [coords...] | {"random": {"scale": s}},
///     "horizon":   K,
///     "probes":    [i...],                (optional)
///     "certificates": ["quasi-fejer", ...],
///     "tolerances": {"name": value, ...}, (optional)
///     "seed":      n,                     (required with any random element)
///     "output":    {"dir": "path"}        (optional)
///   }
ConfigParseResult parse_config(const std::string& text);

}  // namespace kmlab

#endif

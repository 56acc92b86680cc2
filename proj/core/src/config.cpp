#include "kmlab/config.hpp"

#include <algorithm>
#include <cmath>

#include "kmlab/errors.hpp"
#include "kmlab/monotone_catalog.hpp"
#include "kmlab/operator_catalog.hpp"
#include "kmlab/schedule.hpp"

namespace kmlab {

namespace {

using nlohmann::json;

std::size_t line_of_byte(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') ++line;
  }
  return line;
}

const std::vector<std::string> kExtraToleranceKeys{
    "trend-threshold", "subreg-delta", "subreg-samples",
};

bool is_sampling_certificate(const std::string& name) {
  return name == "contraction" || name == "subreg-transfer" || name == "resolvent-rescale" ||
         name == "resolvent-firm";
}

}  // namespace

const std::vector<std::string>& known_certificate_names() {
  static const std::vector<std::string> names{
      "quasi-fejer",
      "residual-summability",
      "scaled-residual-monotone",
      "cluster-inclusion",
      "contraction",
      "linear-rate",
      "stability",
      "subreg-transfer",
      "resolvent-rescale",
      "resolvent-firm",
  };
  return names;
}

ConfigParseResult parse_config(const std::string& text) {
  ConfigParseResult out;
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    out.errors.push_back("config: JSON parse error at line " +
                         std::to_string(line_of_byte(text, e.byte)) + ": " + e.what());
    return out;
  }
  if (!doc.is_object()) {
    out.errors.push_back("config: top-level document must be an object");
    return out;
  }

  ExperimentConfig cfg;
  cfg.raw = doc;
  auto fail = [&out](const std::string& msg) { out.errors.push_back(msg); };

  // --- problem -------------------------------------------------------------
  Eigen::Index dim = 0;
  bool has_target_set = false;
  bool has_dist_zero_image = false;
  if (!doc.contains("problem") || !doc["problem"].is_object()) {
    fail("config.problem: required object missing");
  } else {
    cfg.problem = doc["problem"];
    std::string kind = "monotone";
    if (cfg.problem.contains("kind")) {
      kind = cfg.problem["kind"].is_string() ? cfg.problem["kind"].get<std::string>() : "";
    }
    if (kind != "monotone" && kind != "operator") {
      fail("config.problem.kind: must be \"monotone\" or \"operator\"");
    } else {
      cfg.monotone = kind == "monotone";
      try {
        if (cfg.monotone) {
          const MaxMonotoneMap A = catalog_monotone(cfg.problem);
          dim = A.dim;
          has_target_set = A.zero_set.has_value();
          has_dist_zero_image = A.dist_zero_image.has_value();
        } else {
          const AveragedMap T = catalog_nonexpansive(cfg.problem);
          dim = T.dim;
          has_target_set = T.fixed_set.has_value();
        }
      } catch (const error& e) {
        fail(std::string("config.problem: ") + e.what());
      }
    }
  }

  // --- seed ----------------------------------------------------------------
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_integer() || doc["seed"].get<long long>() < 0) {
      fail("config.seed: must be a nonnegative integer");
    } else {
      cfg.seed = doc["seed"].get<std::uint64_t>();
      cfg.seed_given = true;
    }
  }

  // --- schedule ------------------------------------------------------------
  bool random_error = false;
  if (!doc.contains("schedule") || !doc["schedule"].is_object()) {
    fail("config.schedule: required object missing");
  } else {
    cfg.schedule_spec = doc["schedule"];
    random_error = cfg.schedule_spec.contains("error") &&
                   cfg.schedule_spec["error"].value("direction", "") == "random";
    if (dim > 0) {
      try {
        const Schedule s = make_schedule(cfg.schedule_spec, dim, cfg.seed);
        if (s.declared.count("c-nondecreasing")) {
          for (int k = 0; k < 16; ++k) {
            if (s.c_at(k + 1) < s.c_at(k) - 1e-15) {
              fail("config.schedule: declared c-nondecreasing but c decreases at k = " +
                   std::to_string(k + 1));
              break;
            }
          }
        }
      } catch (const error& e) {
        fail(std::string("config.schedule: ") + e.what());
      }
    }
  }

  // --- x0 ------------------------------------------------------------------
  if (!doc.contains("x0")) {
    fail("config.x0: required field missing");
  } else if (doc["x0"].is_array()) {
    Point v(static_cast<Eigen::Index>(doc["x0"].size()));
    bool numeric = true;
    Eigen::Index i = 0;
    for (const auto& c : doc["x0"]) {
      if (!c.is_number()) { numeric = false; break; }
      v[i++] = c.get<double>();
    }
    if (!numeric || v.size() == 0) {
      fail("config.x0: must be a nonempty numeric array");
    } else if (dim > 0 && v.size() != dim) {
      fail("config.x0: dimension " + std::to_string(v.size()) + " does not match the problem (" +
           std::to_string(dim) + ")");
    } else {
      cfg.x0 = v;
    }
  } else if (doc["x0"].is_object() && doc["x0"].contains("random")) {
    cfg.x0_random = true;
    const auto& r = doc["x0"]["random"];
    if (r.is_object() && r.contains("scale")) {
      if (!r["scale"].is_number() || r["scale"].get<double>() <= 0) {
        fail("config.x0.random.scale: must be a positive number");
      } else {
        cfg.x0_random_scale = r["scale"].get<double>();
      }
    }
  } else {
    fail("config.x0: must be a coordinate array or {\"random\": {\"scale\": s}}");
  }

  // --- horizon / probes ----------------------------------------------------
  if (!doc.contains("horizon") || !doc["horizon"].is_number_integer() ||
      doc["horizon"].get<int>() < 1) {
    fail("config.horizon: required positive integer missing");
  } else {
    cfg.horizon = doc["horizon"].get<int>();
  }
  if (doc.contains("probes")) {
    if (!doc["probes"].is_array()) {
      fail("config.probes: must be an integer array");
    } else {
      for (const auto& p : doc["probes"]) {
        if (!p.is_number_integer() || p.get<int>() < 0 || p.get<int>() > cfg.horizon) {
          fail("config.probes: entries must be integers in [0, horizon]");
          break;
        }
        cfg.probes.push_back(p.get<int>());
      }
    }
  }

  // --- certificates ----------------------------------------------------------
  bool sampling_requested = false;
  if (doc.contains("certificates")) {
    if (!doc["certificates"].is_array()) {
      fail("config.certificates: must be an array of names");
    } else {
      const auto& known = known_certificate_names();
      for (const auto& c : doc["certificates"]) {
        const std::string name = c.is_string() ? c.get<std::string>() : c.dump();
        if (std::find(known.begin(), known.end(), name) == known.end()) {
          fail("config.certificates: unknown certificate name '" + name + "'");
          continue;
        }
        cfg.certificates.push_back(name);
        sampling_requested = sampling_requested || is_sampling_certificate(name);

        const bool needs_monotone = name == "scaled-residual-monotone" ||
                                    name == "cluster-inclusion" || name == "subreg-transfer" ||
                                    name == "resolvent-rescale" || name == "resolvent-firm";
        if (needs_monotone && !cfg.monotone) {
          fail("config.certificates: '" + name + "' requires a monotone problem");
        }
        const bool needs_target = name == "quasi-fejer" || name == "contraction" ||
                                  name == "cluster-inclusion" || name == "subreg-transfer" ||
                                  name == "resolvent-firm";
        if (needs_target && dim > 0 && !has_target_set) {
          fail("config.certificates: '" + name +
               "' requires a problem with a known fixed/zero set, which this problem lacks");
        }
        if ((name == "subreg-transfer" || (name == "contraction" && cfg.monotone)) && dim > 0 &&
            cfg.monotone && !has_dist_zero_image) {
          fail("config.certificates: '" + name +
               "' requires a closed-form d(0, Ax), which this problem lacks");
        }
      }
    }
  }

  // --- tolerances ------------------------------------------------------------
  if (doc.contains("tolerances")) {
    if (!doc["tolerances"].is_object()) {
      fail("config.tolerances: must be an object");
    } else {
      const auto& known = known_certificate_names();
      for (const auto& [key, value] : doc["tolerances"].items()) {
        const bool known_cert = std::find(known.begin(), known.end(), key) != known.end();
        const bool known_extra = std::find(kExtraToleranceKeys.begin(), kExtraToleranceKeys.end(),
                                           key) != kExtraToleranceKeys.end();
        if (!known_cert && !known_extra) {
          fail("config.tolerances: unknown key '" + key + "'");
          continue;
        }
        if (!value.is_number()) {
          fail("config.tolerances: '" + key + "' must be numeric");
          continue;
        }
        cfg.tolerances[key] = value.get<double>();
      }
    }
  }

  // --- output ----------------------------------------------------------------
  if (doc.contains("output")) {
    if (!doc["output"].is_object()) {
      fail("config.output: must be an object");
    } else if (doc["output"].contains("dir")) {
      if (!doc["output"]["dir"].is_string()) {
        fail("config.output.dir: must be a string");
      } else {
        cfg.out_dir = doc["output"]["dir"].get<std::string>();
      }
    }
  }

  // --- randomness requires a seed ---------------------------------------------
  const bool any_random = cfg.x0_random || random_error || sampling_requested;
  if (any_random && !cfg.seed_given) {
    fail("config.seed: required because a random element is configured "
         "(random x0, random error directions, or a sampling certificate)");
  }

  if (out.errors.empty()) out.config = std::move(cfg);
  return out;
}

}  // namespace kmlab

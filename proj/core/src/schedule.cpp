#include "kmlab/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "kmlab/errors.hpp"
#include "kmlab/rng.hpp"

namespace kmlab {

namespace {

using nlohmann::json;

double need_number(const json& spec, const char* key, const std::string& who) {
  if (!spec.contains(key) || !spec[key].is_number()) {
    throw config_error(who + ": missing numeric field '" + key + "'");
  }
  return spec[key].get<double>();
}

}  // namespace

ScalarFormula parse_formula(const json& spec, const std::string& who) {
  if (spec.is_number()) {
    // Bare numbers are shorthand for constants.
    const double v = spec.get<double>();
    ScalarFormula f;
    f.spec = json{{"kind", "constant"}, {"value", v}};
    f.eval = [v](int) { return v; };
    return f;
  }
  if (!spec.is_object() || !spec.contains("kind") || !spec["kind"].is_string()) {
    throw config_error(who + ": formula must be a number or an object with 'kind'");
  }
  const std::string kind = spec["kind"].get<std::string>();
  ScalarFormula f;
  f.spec = spec;

  if (kind == "constant") {
    const double v = need_number(spec, "value", who);
    f.eval = [v](int) { return v; };
  } else if (kind == "geometric") {
    const double base = need_number(spec, "base", who);
    const double ratio = need_number(spec, "ratio", who);
    f.eval = [base, ratio](int k) { return base * std::pow(ratio, k); };
  } else if (kind == "harmonic") {
    const double scale = need_number(spec, "scale", who);
    const double power = spec.contains("power") ? need_number(spec, "power", who) : 1.0;
    f.eval = [scale, power](int k) { return scale / std::pow(k + 1.0, power); };
  } else if (kind == "affine") {
    const double intercept = need_number(spec, "intercept", who);
    const double slope = need_number(spec, "slope", who);
    const double cap = spec.contains("cap") ? need_number(spec, "cap", who)
                                            : std::numeric_limits<double>::infinity();
    const double floor = spec.contains("floor") ? need_number(spec, "floor", who)
                                                : -std::numeric_limits<double>::infinity();
    f.eval = [intercept, slope, cap, floor](int k) {
      return std::clamp(intercept + slope * k, floor, cap);
    };
  } else if (kind == "piecewise") {
    if (!spec.contains("pieces") || !spec["pieces"].is_array() || spec["pieces"].empty()) {
      throw config_error(who + ": piecewise formula needs a nonempty 'pieces' array");
    }
    std::vector<std::pair<int, ScalarFormula>> pieces;
    for (const auto& piece : spec["pieces"]) {
      if (!piece.contains("from") || !piece["from"].is_number_integer() || !piece.contains("formula")) {
        throw config_error(who + ": each piece needs integer 'from' and 'formula'");
      }
      pieces.emplace_back(piece["from"].get<int>(), parse_formula(piece["formula"], who));
    }
    std::sort(pieces.begin(), pieces.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    if (pieces.front().first != 0) throw config_error(who + ": first piece must start at k = 0");
    f.eval = [pieces](int k) {
      const ScalarFormula* active = &pieces.front().second;
      for (const auto& [from, formula] : pieces) {
        if (from <= k) active = &formula;
      }
      return (*active)(k);
    };
  } else {
    throw config_error(who + ": unknown formula kind '" + kind + "'");
  }
  return f;
}

ScalarFormula zero_formula() {
  ScalarFormula f;
  f.spec = json{{"kind", "constant"}, {"value", 0.0}};
  f.eval = [](int) { return 0.0; };
  return f;
}

double Schedule::lambda_at(int k) const { return lambda(k); }

double Schedule::c_at(int k) const {
  const double v = c(k);
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw config_error("schedule: c formula produced " + std::to_string(v) +
                       " at k = " + std::to_string(k) + " (must be > 0)");
  }
  return v;
}

double Schedule::eta_at(int k) const { return eta(k); }

Point Schedule::error_at(int k) const {
  if (error_fixed) return error_direction;
  auto gen = engine_at(seed, static_cast<std::uint64_t>(k));
  return unit_sphere(gen, dim);
}

const std::set<std::string>& known_schedule_flags() {
  static const std::set<std::string> flags{
      "sum-eta-e-finite", "c-nondecreasing", "lambda-divergent",
      "c-square-divergent", "c-bounded", "lambda-equals-one", "c-convergent",
  };
  return flags;
}

Schedule make_schedule(const json& spec, Eigen::Index dim, std::uint64_t seed) {
  if (!spec.is_object()) throw config_error("schedule spec must be an object");
  Schedule s;
  s.spec = spec;
  s.dim = dim;
  s.seed = seed;
  s.lambda = spec.contains("lambda") ? parse_formula(spec["lambda"], "schedule.lambda")
                                     : parse_formula(json(1.0), "schedule.lambda");
  s.c = spec.contains("c") ? parse_formula(spec["c"], "schedule.c")
                           : parse_formula(json(1.0), "schedule.c");
  s.eta = spec.contains("eta") ? parse_formula(spec["eta"], "schedule.eta") : zero_formula();

  if (spec.contains("error")) {
    const auto& err = spec["error"];
    if (!err.is_object() || !err.contains("direction") || !err["direction"].is_string()) {
      throw config_error("schedule.error: needs 'direction' = \"fixed\" | \"random\"");
    }
    const std::string direction = err["direction"].get<std::string>();
    if (direction == "fixed") {
      if (!err.contains("vector") || !err["vector"].is_array()) {
        throw config_error("schedule.error: fixed direction needs 'vector'");
      }
      Point v(static_cast<Eigen::Index>(err["vector"].size()));
      Eigen::Index i = 0;
      for (const auto& c : err["vector"]) v[i++] = c.get<double>();
      require_dim(v, dim, "schedule.error.vector");
      const double n = v.norm();
      if (n < 1e-15) throw config_error("schedule.error: fixed direction must be nonzero");
      s.error_fixed = true;
      s.error_direction = v / n;  // directions are unit; eta carries magnitude
    } else if (direction == "random") {
      s.error_fixed = false;
    } else {
      throw config_error("schedule.error: unknown direction '" + direction + "'");
    }
  } else {
    s.error_fixed = true;
    s.error_direction = Point::Zero(dim);
    s.error_direction[0] = 1.0;
  }

  if (spec.contains("declared")) {
    if (!spec["declared"].is_array()) throw config_error("schedule.declared must be an array");
    for (const auto& flag : spec["declared"]) {
      if (!flag.is_string() || !known_schedule_flags().count(flag.get<std::string>())) {
        throw config_error("schedule.declared: unknown hypothesis flag " + flag.dump());
      }
      s.declared.insert(flag.get<std::string>());
    }
  }

  for (int k = 0; k <= 64; ++k) s.c_at(k);  // early probe of the positivity contract
  return s;
}

}  // namespace kmlab

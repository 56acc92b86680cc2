#ifndef KMLAB_SCHEDULE_HPP
#define KMLAB_SCHEDULE_HPP

#include <cstdint>
#include <functional>
#include <nlohmann/json.hpp>
#include <set>
#include <string>

#include "kmlab/point.hpp"

namespace kmlab {

/// A named scalar sequence k -> value.  Families:
///   constant   {value}
///   geometric  {base, ratio}            base * ratio^k
///   harmonic   {scale, power}           scale / (k+1)^power
///   affine     {intercept, slope, cap?, floor?}   clamp(intercept + slope*k)
///   piecewise  {pieces: [{from, formula}, ...]}   last piece with from <= k
struct ScalarFormula {
  nlohmann::json spec;
  std::function<double(int)> eval;

  double operator()(int k) const { return eval(k); }
};

ScalarFormula parse_formula(const nlohmann::json& spec, const std::string& who);

/// Constant-zero formula (the default for eta).
ScalarFormula zero_formula();

/// The sequences lambda_k, c_k, eta_k, e_k plus the summability hypotheses
/// the user declares about them.  error_at is a pure function of (seed, k):
/// the same seed reproduces the same error sequence in any access order.
struct Schedule {
  ScalarFormula lambda;
  ScalarFormula c;
  ScalarFormula eta;
  /// Error directions: unit vectors, either fixed or seeded uniform-on-sphere.
  bool error_fixed = true;
  Point error_direction;  // used when error_fixed
  Eigen::Index dim = 1;
  std::uint64_t seed = 0;
  std::set<std::string> declared;
  nlohmann::json spec;  // the record this schedule was built from

  double lambda_at(int k) const;
  double c_at(int k) const;  // throws config_error if the formula yields <= 0
  double eta_at(int k) const;
  Point error_at(int k) const;
};

/// Known declared-hypothesis flags.
const std::set<std::string>& known_schedule_flags();

/// Builds a deterministic Schedule from a structured record:
///   { "lambda": formula, "c": formula, "eta": formula (optional, default 0),
///     "error": {"direction": "fixed"|"random", "vector": [...]} (optional),
///     "declared": ["sum-eta-e-finite", ...] (optional) }
/// The c formula is probed over an initial index range; a nonpositive value
/// is a config error.
Schedule make_schedule(const nlohmann::json& spec, Eigen::Index dim, std::uint64_t seed);

}  // namespace kmlab

#endif

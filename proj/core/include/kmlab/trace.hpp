#ifndef KMLAB_TRACE_HPP
#define KMLAB_TRACE_HPP

#include <cstdint>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "kmlab/averaged_map.hpp"
#include "kmlab/schedule.hpp"

namespace kmlab {

struct TraceRecord {
  int k = 0;
  Point x;
  /// Pre-error iterate y_k = (1-lambda_k) x_k + lambda_k T_k x_k.
  Point y;
  /// ||x_k - T_k x_k||.
  double residual = 0.0;
  /// ||x_k - J_{c_k A} x_k|| / c_k on generalized proximal runs.
  std::optional<double> scaled_residual;
  /// Distance to the common fixed set / zero set, when a descriptor exists.
  std::optional<double> dist_to_set;
  /// Slack of the quasi-Fejer step inequality k -> k+1 w.r.t. the anchor
  /// (projection of x_0 onto the target set); absent on the last record.
  std::optional<double> fejer_slack;
};

/// Full per-iteration record of one run, plus metadata for replay and the
/// in-memory handles the certificates need (maps, target set, schedule).
struct Trace {
  std::vector<TraceRecord> records;

  std::string problem_id;
  std::string kind;  // "km" | "gppa"
  std::uint64_t seed = 0;
  int horizon = 0;
  nlohmann::json schedule_spec;
  bool aborted = false;
  int abort_index = -1;
  std::vector<std::string> warnings;

  // In-memory only; not serialized.
  OperatorFamily family;
  std::optional<SetDescriptor> target_set;
  std::optional<Point> fejer_anchor;
  Schedule schedule;

  const Point& final_iterate() const { return records.back().x; }
};

/// The exact sequence restarted from iterate x_i with shifted map indices.
struct TranslatedTrace {
  int start_index = 0;
  std::vector<Point> xi;  // xi[k], k = 0..K; xi[0] equals the source x_i exactly
  std::optional<Point> limit_estimate;
};

/// CSV with fixed column order
///   k, x0..x{n-1}, residual, scaled_residual, dist_to_set, fejer_slack
/// and 17-significant-digit (round-trip exact) floats.  Absent optional
/// fields print as empty cells.
std::string trace_to_csv(const Trace& t);

/// Full-metadata JSON (records, schedule spec, warnings, abort state).
nlohmann::json trace_to_json(const Trace& t);

/// Round-trip exact float formatting used by every exporter.
std::string format_double(double v);

}  // namespace kmlab

#endif

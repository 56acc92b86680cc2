#include "kmlab/trace.hpp"

#include <cstdio>

namespace kmlab {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string trace_to_csv(const Trace& t) {
  std::string out;
  const Eigen::Index n = t.records.empty() ? 0 : t.records.front().x.size();
  out += "k";
  for (Eigen::Index i = 0; i < n; ++i) out += ",x" + std::to_string(i);
  out += ",residual,scaled_residual,dist_to_set,fejer_slack\n";

  for (const TraceRecord& r : t.records) {
    out += std::to_string(r.k);
    for (Eigen::Index i = 0; i < n; ++i) out += "," + format_double(r.x[i]);
    out += "," + format_double(r.residual);
    out += ",";
    if (r.scaled_residual) out += format_double(*r.scaled_residual);
    out += ",";
    if (r.dist_to_set) out += format_double(*r.dist_to_set);
    out += ",";
    if (r.fejer_slack) out += format_double(*r.fejer_slack);
    out += "\n";
  }
  return out;
}

nlohmann::json trace_to_json(const Trace& t) {
  nlohmann::json j;
  j["problem_id"] = t.problem_id;
  j["kind"] = t.kind;
  j["seed"] = t.seed;
  j["horizon"] = t.horizon;
  j["schedule"] = t.schedule_spec;
  j["aborted"] = t.aborted;
  if (t.aborted) j["abort_index"] = t.abort_index;
  j["warnings"] = t.warnings;

  nlohmann::json records = nlohmann::json::array();
  for (const TraceRecord& r : t.records) {
    nlohmann::json jr;
    jr["k"] = r.k;
    jr["x"] = std::vector<double>(r.x.data(), r.x.data() + r.x.size());
    jr["y"] = std::vector<double>(r.y.data(), r.y.data() + r.y.size());
    jr["residual"] = r.residual;
    if (r.scaled_residual) jr["scaled_residual"] = *r.scaled_residual;
    if (r.dist_to_set) jr["dist_to_set"] = *r.dist_to_set;
    if (r.fejer_slack) jr["fejer_slack"] = *r.fejer_slack;
    records.push_back(std::move(jr));
  }
  j["records"] = std::move(records);
  return j;
}

}  // namespace kmlab

#include "kmlab/certificate.hpp"

#include <nlohmann/json.hpp>

namespace kmlab {

void Certificate::add_slack(double slack, int k) {
  per_k_slack.push_back(slack);
  if (slack < worst_slack) {
    worst_slack = slack;
    k_of_worst = k;
  }
}

void Certificate::finalize() {
  verdict = (worst_slack >= -tolerance) ? Verdict::pass : Verdict::fail;
}

void Certificate::mark_not_applicable(const std::string& reason) {
  verdict = Verdict::not_applicable;
  na_reason = reason;
}

std::string to_string(Certificate::Verdict v) {
  switch (v) {
    case Certificate::Verdict::pass: return "pass";
    case Certificate::Verdict::fail: return "fail";
    case Certificate::Verdict::not_applicable: return "not-applicable";
  }
  return "unknown";
}

nlohmann::json certificate_to_json(const Certificate& c) {
  nlohmann::json j{
      {"name", c.name},
      {"citation", c.citation},
      {"verdict", to_string(c.verdict)},
      {"worst_slack", c.worst_slack},
      {"tolerance", c.tolerance},
      {"k_of_worst", c.k_of_worst},
  };
  if (!c.na_reason.empty()) j["na_reason"] = c.na_reason;
  if (!c.metrics.empty()) j["metrics"] = c.metrics;
  return j;
}

}  // namespace kmlab

#ifndef KMLAB_CERTIFICATE_HPP
#define KMLAB_CERTIFICATE_HPP

#include <limits>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace kmlab {

/// Machine-checked record of one named inequality family: the per-index
/// slacks (inequality RHS minus LHS), the worst of them, and a verdict.
struct Certificate {
  enum class Verdict { pass, fail, not_applicable };

  std::string name;
  /// The inequality being checked, written out in plain ASCII math.
  std::string citation;
  std::vector<double> per_k_slack;
  double worst_slack = std::numeric_limits<double>::infinity();
  int k_of_worst = -1;
  double tolerance = 0.0;
  Verdict verdict = Verdict::pass;
  /// Names the unmet hypothesis when verdict == not_applicable.
  std::string na_reason;
  /// Auxiliary named scalars (deviation sums, measured moduli, ...).
  std::map<std::string, double> metrics;

  bool passed() const { return verdict == Verdict::pass; }

  /// Records a slack, updating worst_slack / k_of_worst.
  void add_slack(double slack, int k);

  /// Sets verdict from worst_slack: pass iff worst_slack >= -tolerance.
  void finalize();

  /// Marks the certificate not applicable, naming the failing hypothesis.
  void mark_not_applicable(const std::string& reason);
};

std::string to_string(Certificate::Verdict v);

nlohmann::json certificate_to_json(const Certificate& c);

}  // namespace kmlab

#endif

#ifndef KMLAB_SUMMABILITY_HPP
#define KMLAB_SUMMABILITY_HPP

#include <functional>
#include <map>
#include <nlohmann/json_fwd.hpp>
#include <string>
#include <vector>

#include "kmlab/schedule.hpp"

namespace kmlab {

enum class HypothesisStatus { satisfied_so_far, violated, inconclusive };

std::string to_string(HypothesisStatus s);

struct HypothesisVerdict {
  HypothesisStatus status = HypothesisStatus::inconclusive;
  int k = -1;          // index of the violation, when one occurred
  std::string note;
  std::string trend;   // trend of the underlying series, when applicable
};

/// Finite-horizon evidence about the sequence hypotheses of the convergence
/// theorems: named partial sums, monotonicity flags, per-hypothesis verdicts.
/// Series tails are classified by trend (ratio of consecutive increments over
/// the last decade of k), never asserted as limits.
struct SummabilityReport {
  int horizon = 0;
  double trend_threshold = 0.99;
  std::map<std::string, double> partial_sums;
  std::map<std::string, std::string> trends;
  std::map<std::string, std::vector<double>> partial_sum_curves;
  bool c_nondecreasing = true;
  int c_first_decrease = -1;
  bool lambda_in_interval = true;
  int lambda_violation_k = -1;
  std::map<std::string, HypothesisVerdict> verdicts;
  // Filled by the trace-residual variant.
  double min_residual = std::numeric_limits<double>::infinity();
  int min_residual_k = -1;
};

/// Trend of a nonnegative term sequence over the last decade of indices:
/// "zero" (all ~0), "convergent-trend" (increment ratios <= threshold),
/// or "divergent-trend".
std::string classify_trend(const std::vector<double>& terms, double threshold = 0.99);

/// Probes every theorem hypothesis of the schedule at horizon K.
/// Hard per-index conditions are checked exactly; series conditions are
/// classified by trend.  Declared flags are cross-checked against the
/// evidence and reported as "declared:<flag>" verdicts.
SummabilityReport summability_probe(const Schedule& s,
                                    const std::function<double(int)>& alpha_at, int K);

nlohmann::json summability_to_json(const SummabilityReport& r);

}  // namespace kmlab

#endif

#include "kmlab/summability.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>
#include <numeric>

namespace kmlab {

std::string to_string(HypothesisStatus s) {
  switch (s) {
    case HypothesisStatus::satisfied_so_far: return "satisfied-so-far";
    case HypothesisStatus::violated: return "violated";
    case HypothesisStatus::inconclusive: return "inconclusive";
  }
  return "unknown";
}

std::string classify_trend(const std::vector<double>& terms, double threshold) {
  const std::size_t n = terms.size();
  if (n < 2) return "zero";
  const std::size_t window = std::max<std::size_t>(2, n / 10);
  const std::size_t start = n - window;

  bool all_zero = true;
  for (std::size_t i = start; i < n; ++i) {
    if (terms[i] > 1e-300) { all_zero = false; break; }
  }
  if (all_zero) return "zero";

  double max_ratio = 0.0;
  std::vector<double> raabe;
  for (std::size_t i = start; i + 1 < n; ++i) {
    if (terms[i] > 1e-300) {
      const double ratio = terms[i + 1] / terms[i];
      max_ratio = std::max(max_ratio, ratio);
      raabe.push_back(static_cast<double>(i) * (1.0 - ratio));
    } else if (terms[i + 1] > 1e-300) {
      max_ratio = std::numeric_limits<double>::infinity();
    }
  }
  if (max_ratio <= threshold) return "convergent-trend";

  // Polynomial-decay regime: consecutive ratios approach 1 from below for
  // every p-series, so the bare ratio test cannot separate p > 1 from p <= 1.
  // A Raabe-type exponent estimate k (1 - t_{k+1}/t_k) -> p resolves it.
  if (!raabe.empty()) {
    std::nth_element(raabe.begin(), raabe.begin() + raabe.size() / 2, raabe.end());
    const double p_hat = raabe[raabe.size() / 2];
    if (p_hat >= 1.1) return "convergent-trend";
  }
  return "divergent-trend";
}

namespace {

std::vector<double> cumulative(const std::vector<double>& terms) {
  std::vector<double> sums(terms.size());
  std::partial_sum(terms.begin(), terms.end(), sums.begin());
  return sums;
}

void add_series(SummabilityReport& r, const std::string& name, const std::vector<double>& terms) {
  const auto curve = cumulative(terms);
  r.partial_sums[name] = curve.empty() ? 0.0 : curve.back();
  r.trends[name] = classify_trend(terms, r.trend_threshold);
  r.partial_sum_curves[name] = curve;
}

bool series_convergent(const SummabilityReport& r, const std::string& name) {
  const auto& t = r.trends.at(name);
  return t == "zero" || t == "convergent-trend";
}

HypothesisVerdict finite_series_verdict(const SummabilityReport& r, const std::string& series,
                                        int window_start) {
  HypothesisVerdict v;
  v.trend = r.trends.at(series);
  if (series_convergent(r, series)) {
    v.status = HypothesisStatus::satisfied_so_far;
    v.note = "partial sum " + std::to_string(r.partial_sums.at(series));
  } else {
    v.status = HypothesisStatus::violated;
    v.k = window_start;
    v.note = "increments not decaying over the last decade of k";
  }
  return v;
}

HypothesisVerdict divergent_series_verdict(const SummabilityReport& r, const std::string& series) {
  HypothesisVerdict v;
  v.trend = r.trends.at(series);
  if (!series_convergent(r, series)) {
    v.status = HypothesisStatus::satisfied_so_far;
    v.note = "divergent-trend consistent with the hypothesis";
  } else {
    v.status = HypothesisStatus::inconclusive;
    v.note = "convergent-trend suggests the divergence hypothesis fails";
  }
  return v;
}

}  // namespace

SummabilityReport summability_probe(const Schedule& s, const std::function<double(int)>& alpha_at,
                                    int K) {
  SummabilityReport r;
  r.horizon = K;

  std::vector<double> eta_e(K + 1), lam_alpha(K + 1), lam_two(K + 1), c_sq(K + 1);
  std::vector<double> lambdas(K + 1), cs(K + 1);
  for (int k = 0; k <= K; ++k) {
    const double lam = s.lambda_at(k);
    const double ck = s.c_at(k);
    const double alpha = alpha_at(k);
    lambdas[k] = lam;
    cs[k] = ck;
    eta_e[k] = s.eta_at(k) * s.error_at(k).norm();
    lam_alpha[k] = lam * (1.0 / alpha - lam);
    lam_two[k] = lam * (2.0 - lam);
    c_sq[k] = ck * ck;

    if (r.lambda_in_interval && (lam < -1e-15 || lam > 1.0 / alpha + 1e-15)) {
      r.lambda_in_interval = false;
      r.lambda_violation_k = k;
    }
    if (r.c_nondecreasing && k > 0 && cs[k] < cs[k - 1] - 1e-15) {
      r.c_nondecreasing = false;
      r.c_first_decrease = k;
    }
  }

  // Fitted limit for the ratio-deviation series: mean of c over the last decade.
  const int window = std::max(1, (K + 1) / 10);
  const int wstart = K + 1 - window;
  double c_fit = 0.0;
  for (int k = wstart; k <= K; ++k) c_fit += cs[k];
  c_fit /= window;
  std::vector<double> c_dev(K + 1);
  for (int k = 0; k <= K; ++k) c_dev[k] = std::abs(cs[k] / c_fit - 1.0);

  add_series(r, "eta_e", eta_e);
  add_series(r, "lambda_residual_weight", lam_alpha);
  add_series(r, "lambda_two_minus", lam_two);
  add_series(r, "c_squared", c_sq);
  add_series(r, "c_ratio_dev", c_dev);
  r.partial_sums["c_fit"] = c_fit;
  r.partial_sums["max_c"] = *std::max_element(cs.begin(), cs.end());

  // Per-theorem hypothesis verdicts.
  r.verdicts["sum-eta-e-finite"] = finite_series_verdict(r, "eta_e", wstart);

  {
    HypothesisVerdict v;
    if (r.lambda_in_interval) {
      v.status = HypothesisStatus::satisfied_so_far;
    } else {
      v.status = HypothesisStatus::violated;
      v.k = r.lambda_violation_k;
      v.note = "lambda outside [0, 1/alpha] at k = " + std::to_string(v.k);
    }
    r.verdicts["lambda-in-interval"] = v;
  }

  r.verdicts["lambda-divergent"] = divergent_series_verdict(r, "lambda_residual_weight");

  {
    // A1: sum c_k^2 = inf and lambda == 1.
    HypothesisVerdict v;
    int bad_lambda = -1;
    for (int k = 0; k <= K; ++k) {
      if (std::abs(lambdas[k] - 1.0) > 1e-15) { bad_lambda = k; break; }
    }
    if (bad_lambda >= 0) {
      v.status = HypothesisStatus::violated;
      v.k = bad_lambda;
      v.note = "lambda != 1 at k = " + std::to_string(bad_lambda);
    } else {
      v = divergent_series_verdict(r, "c_squared");
      if (v.status == HypothesisStatus::inconclusive) v.note += " (A1 likely fails)";
    }
    r.verdicts["ppa-a1"] = v;
  }

  {
    // A2: sum lambda(2-lambda) = inf, sup c < inf, lambda in ]0,2], c nondecreasing.
    HypothesisVerdict v;
    int bad_lambda = -1;
    for (int k = 0; k <= K; ++k) {
      if (lambdas[k] <= 0.0 || lambdas[k] > 2.0 + 1e-15) { bad_lambda = k; break; }
    }
    if (!r.c_nondecreasing) {
      v.status = HypothesisStatus::violated;
      v.k = r.c_first_decrease;
      v.note = "c decreases at k = " + std::to_string(v.k);
    } else if (bad_lambda >= 0) {
      v.status = HypothesisStatus::violated;
      v.k = bad_lambda;
      v.note = "lambda outside ]0,2] at k = " + std::to_string(bad_lambda);
    } else {
      v = divergent_series_verdict(r, "lambda_two_minus");
      v.note += "; max c so far " + std::to_string(r.partial_sums["max_c"]);
    }
    r.verdicts["gppa-a2"] = v;
  }

  {
    HypothesisVerdict v = finite_series_verdict(r, "c_ratio_dev", wstart);
    v.note += "; fitted c = " + std::to_string(c_fit);
    r.verdicts["c-convergent"] = v;
  }

  // Cross-check each declared flag against the evidence.
  for (const std::string& flag : s.declared) {
    HypothesisVerdict v;
    if (flag == "sum-eta-e-finite") {
      v = r.verdicts["sum-eta-e-finite"];
    } else if (flag == "c-nondecreasing") {
      if (r.c_nondecreasing) {
        v.status = HypothesisStatus::satisfied_so_far;
      } else {
        v.status = HypothesisStatus::violated;
        v.k = r.c_first_decrease;
        v.note = "declared nondecreasing but c decreases at k = " + std::to_string(v.k);
      }
    } else if (flag == "lambda-divergent") {
      v = r.verdicts["lambda-divergent"];
      if (v.status == HypothesisStatus::inconclusive) {
        v.status = HypothesisStatus::violated;
        v.note = "declared divergent but the series shows a convergent trend";
      }
    } else if (flag == "c-square-divergent") {
      v = divergent_series_verdict(r, "c_squared");
      if (v.status == HypothesisStatus::inconclusive) {
        v.status = HypothesisStatus::violated;
        v.note = "declared divergent but the series shows a convergent trend";
      }
    } else if (flag == "c-bounded") {
      v.status = HypothesisStatus::satisfied_so_far;
      v.note = "max c so far " + std::to_string(r.partial_sums["max_c"]);
    } else if (flag == "lambda-equals-one") {
      v = r.verdicts["ppa-a1"];
      if (v.status != HypothesisStatus::violated) v.status = HypothesisStatus::satisfied_so_far;
    } else if (flag == "c-convergent") {
      v = r.verdicts["c-convergent"];
    }
    r.verdicts["declared:" + flag] = v;
  }

  return r;
}

nlohmann::json summability_to_json(const SummabilityReport& r) {
  nlohmann::json j;
  j["horizon"] = r.horizon;
  j["trend_threshold"] = r.trend_threshold;
  j["partial_sums"] = r.partial_sums;
  j["trends"] = r.trends;
  j["c_nondecreasing"] = r.c_nondecreasing;
  if (!r.c_nondecreasing) j["c_first_decrease"] = r.c_first_decrease;
  j["lambda_in_interval"] = r.lambda_in_interval;
  if (!r.lambda_in_interval) j["lambda_violation_k"] = r.lambda_violation_k;
  if (std::isfinite(r.min_residual)) {
    j["min_residual"] = r.min_residual;
    j["min_residual_k"] = r.min_residual_k;
  }
  nlohmann::json verdicts;
  for (const auto& [name, v] : r.verdicts) {
    nlohmann::json jv{{"status", to_string(v.status)}};
    if (v.k >= 0) jv["k"] = v.k;
    if (!v.note.empty()) jv["note"] = v.note;
    if (!v.trend.empty()) jv["trend"] = v.trend;
    verdicts[name] = jv;
  }
  j["verdicts"] = verdicts;

  nlohmann::json curves;
  for (const auto& [name, curve] : r.partial_sum_curves) {
    // Subsample long curves; the full tails live in the partial sums.
    const std::size_t stride = std::max<std::size_t>(1, curve.size() / 100);
    nlohmann::json pts = nlohmann::json::array();
    for (std::size_t i = 0; i < curve.size(); i += stride) {
      pts.push_back({{"k", i}, {"sum", curve[i]}});
    }
    if (!curve.empty() && (curve.size() - 1) % stride != 0) {
      pts.push_back({{"k", curve.size() - 1}, {"sum", curve.back()}});
    }
    curves[name] = pts;
  }
  j["partial_sum_curves"] = curves;
  return j;
}

}  // namespace kmlab

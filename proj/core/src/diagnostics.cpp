#include "kmlab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>

#include "kmlab/errors.hpp"
#include "kmlab/monotone_ops.hpp"
#include "kmlab/rng.hpp"

namespace kmlab {

Certificate quasi_fejer_certificate(const Trace& t, const Point& xbar,
                                    const std::function<double(int)>& alpha_at,
                                    const Schedule& s) {
  if (t.records.empty()) throw capability_error("quasi_fejer_certificate: empty trace");
  if (t.records.front().y.size() != t.records.front().x.size()) {
    throw capability_error("quasi_fejer_certificate: trace lacks pre-error iterates y_k");
  }
  require_same_dim(xbar, t.records.front().x, "quasi_fejer_certificate");
  for (std::size_t k = 0; k < t.records.size(); ++k) {
    const AveragedMap T = t.family.at(static_cast<int>(k));
    if ((T(xbar) - xbar).norm() > 1e-10) {
      throw precondition_error("quasi_fejer_certificate: xbar is not fixed under map at k = " +
                               std::to_string(k));
    }
  }

  Certificate cert;
  cert.name = "quasi-fejer";
  cert.citation =
      "||x_{k+1}-xbar||^2 <= ||x_k-xbar||^2 - lambda_k(1/alpha_k-lambda_k)||x_k-T_k x_k||^2 "
      "+ eta_k||e_k||(2||y_k-xbar|| + eta_k||e_k||)";
  cert.tolerance = 1e-10;

  for (std::size_t k = 0; k + 1 < t.records.size(); ++k) {
    const TraceRecord& cur = t.records[k];
    const TraceRecord& next = t.records[k + 1];
    const double lambda = s.lambda_at(cur.k);
    const double alpha = alpha_at(cur.k);
    const double eta = s.eta_at(cur.k);
    const double err_norm = eta == 0.0 ? 0.0 : eta * s.error_at(cur.k).norm();
    const double eps = err_norm * (2.0 * (cur.y - xbar).norm() + err_norm);
    const double slack = (cur.x - xbar).squaredNorm() -
                         lambda * (1.0 / alpha - lambda) * cur.residual * cur.residual + eps -
                         (next.x - xbar).squaredNorm();
    cert.add_slack(slack, cur.k);
  }
  cert.finalize();
  return cert;
}

SummabilityReport residual_summability(const Trace& t,
                                       const std::function<double(int)>& alpha_at,
                                       const Schedule& s) {
  if (t.records.empty()) throw capability_error("residual_summability: empty trace");
  SummabilityReport r;
  r.horizon = t.records.back().k;

  std::vector<double> terms(t.records.size());
  for (std::size_t k = 0; k < t.records.size(); ++k) {
    const TraceRecord& rec = t.records[k];
    const double lambda = s.lambda_at(rec.k);
    const double alpha = alpha_at(rec.k);
    terms[k] = lambda * (1.0 / alpha - lambda) * rec.residual * rec.residual;
    if (rec.residual < r.min_residual) {
      r.min_residual = rec.residual;
      r.min_residual_k = rec.k;
    }
  }
  std::vector<double> curve(terms.size());
  double sum = 0.0;
  for (std::size_t k = 0; k < terms.size(); ++k) curve[k] = (sum += terms[k]);
  r.partial_sums["weighted_residual_sq"] = sum;
  r.trends["weighted_residual_sq"] = classify_trend(terms, r.trend_threshold);
  r.partial_sum_curves["weighted_residual_sq"] = std::move(curve);
  return r;
}

SubregularityWitness estimate_subregularity(const std::function<double(const Point&)>& residual_fn,
                                            const SetDescriptor& set, const Point& anchor,
                                            double delta, int samples, std::uint64_t seed) {
  if (!set.contains(anchor, 1e-10)) {
    throw precondition_error("estimate_subregularity: anchor is not in the target set");
  }
  if (!(delta > 0.0) || samples <= 0) {
    throw input_error("estimate_subregularity: delta and samples must be positive");
  }

  SubregularityWitness w;
  w.anchor = anchor;
  w.delta = delta;
  w.empirical = true;
  w.kappa = 0.0;

  for (int sidx = 0; sidx < samples; ++sidx) {
    auto gen = engine_at(seed, static_cast<std::uint64_t>(sidx));
    const Point x = ball_uniform(gen, anchor, delta);
    const double res = residual_fn(x);
    const double dist = set.distance(x);
    if (res < 1e-13) {
      if (dist > 1e-10) {
        // A point this close to being a zero of the residual must be close
        // to the set; otherwise no finite modulus exists on this ball.
        w.kappa = std::numeric_limits<double>::infinity();
        return w;
      }
      continue;
    }
    w.kappa = std::max(w.kappa, dist / res);
  }
  return w;
}

Certificate subreg_transfer_check(const MaxMonotoneMap& A, double gamma,
                                  const SubregularityWitness& witness_for_A, int samples,
                                  std::uint64_t seed) {
  if (!A.zero_set) {
    throw capability_error("subreg_transfer_check: " + A.name + " has no zero-set descriptor");
  }
  if (witness_for_A.failed()) {
    throw precondition_error("subreg_transfer_check: witness reports no finite modulus");
  }
  const double kappa =
      witness_for_A.kappa * (witness_for_A.empirical ? 1.0 + 1e-3 : 1.0);

  Certificate cert;
  cert.name = "subregularity-transfer";
  cert.citation =
      "d(x, zer A) <= (1 + kappa/gamma) ||x - J_{gamma A} x|| on B[anchor; delta]; "
      "reverse: d(x, zer A) <= kappa' gamma d(0, Ax)";
  cert.tolerance = 1e-6;

  MaxMonotoneMap Ac = A;
  auto resolvent_residual = [Ac, gamma](const Point& x) {
    return (x - resolvent(Ac, gamma, x)).norm();
  };
  const SubregularityWitness measured = estimate_subregularity(
      resolvent_residual, *A.zero_set, witness_for_A.anchor, witness_for_A.delta, samples, seed);
  if (measured.failed()) {
    cert.metrics["measured_kappa_prime"] = std::numeric_limits<double>::infinity();
    cert.add_slack(-std::numeric_limits<double>::infinity(), 0);
    cert.finalize();
    return cert;
  }
  const double bound_forward = 1.0 + kappa / gamma;
  cert.metrics["measured_kappa_prime"] = measured.kappa;
  cert.metrics["bound_forward"] = bound_forward;
  cert.add_slack(bound_forward + 1e-6 - measured.kappa, 0);

  if (A.dist_zero_image) {
    const SubregularityWitness reverse = estimate_subregularity(
        *A.dist_zero_image, *A.zero_set, witness_for_A.anchor, witness_for_A.delta, samples,
        seed + 1);
    if (!reverse.failed()) {
      const double bound_reverse = measured.kappa * gamma;
      cert.metrics["measured_kappa_A"] = reverse.kappa;
      cert.metrics["bound_reverse"] = bound_reverse;
      cert.add_slack(bound_reverse + 1e-6 - reverse.kappa, 1);
    }
  }

  cert.finalize();
  return cert;
}

Certificate contraction_check(const Trace& t, const SetDescriptor& set,
                              const std::function<double(int)>& alpha_at, const Schedule& s,
                              const SubregularityWitness& witness) {
  Certificate cert;
  cert.name = "contraction";
  cert.citation =
      "d(x_{k+1}, set) <= rho_k d(x_k, set), "
      "rho_k = (1 - lambda_k(1 - lambda_k alpha_k)/(alpha_k kappa_k^2))^{1/2}";
  cert.tolerance = 1e-10;

  if (t.records.size() < 2) throw capability_error("contraction_check: trace too short");
  if (witness.failed()) {
    cert.mark_not_applicable("witness reports no finite modulus (kappa = inf)");
    return cert;
  }

  const bool gppa = t.kind == "gppa";
  const double kappa = witness.kappa * (witness.empirical ? 1.0 + 1e-3 : 1.0);

  // Hypothesis gates: exact run, lambda strictly interior, ball confinement.
  for (std::size_t k = 0; k + 1 < t.records.size(); ++k) {
    const int kk = t.records[k].k;
    if (s.eta_at(kk) * s.error_at(kk).norm() > 0.0) {
      cert.mark_not_applicable("trace is not exact (eta_k ||e_k|| > 0 at k = " +
                               std::to_string(kk) + ")");
      return cert;
    }
    const double lambda = s.lambda_at(kk);
    const double alpha = alpha_at(kk);
    if (lambda <= 0.0 || lambda >= 1.0 / alpha) {
      cert.mark_not_applicable("lambda in ]0, 1/alpha[ unmet at k = " + std::to_string(kk));
      return cert;
    }
  }
  for (std::size_t k = 0; k < t.records.size(); ++k) {
    if ((t.records[k].x - witness.anchor).norm() > witness.delta + 1e-12) {
      cert.mark_not_applicable("iterate leaves B[anchor; delta] at k = " +
                               std::to_string(t.records[k].k));
      return cert;
    }
  }

  double max_rho = 0.0;
  bool arrived = false;
  for (std::size_t k = 0; k + 1 < t.records.size(); ++k) {
    const int kk = t.records[k].k;
    const double lambda = s.lambda_at(kk);
    const double alpha = alpha_at(kk);
    const double kappa_k = gppa ? 1.0 + kappa / s.c_at(kk) : kappa;
    const double radicand = 1.0 - lambda * (1.0 - lambda * alpha) / (alpha * kappa_k * kappa_k);
    if (radicand < 0.0) {
      cert.mark_not_applicable("kappa smaller than the contraction formula admits at k = " +
                               std::to_string(kk));
      return cert;
    }
    const double rho = std::sqrt(radicand);
    max_rho = std::max(max_rho, rho);

    const double dk = set.distance(t.records[k].x);
    if (dk < 1e-13) {
      if (!arrived) {
        arrived = true;
        cert.metrics["arrival_index"] = static_cast<double>(kk);
      }
      continue;  // exactly arrived; subsequent ratios excluded
    }
    const double dnext = set.distance(t.records[k + 1].x);
    cert.add_slack(rho * dk - dnext, kk);
  }
  cert.metrics["max_rho"] = max_rho;
  cert.finalize();
  if (cert.verdict == Certificate::Verdict::pass && max_rho >= 1.0) {
    cert.verdict = Certificate::Verdict::fail;
    cert.na_reason = "rho_k reached 1";
  }
  return cert;
}

RateReport linear_rate_estimate(const Trace& t, const Point& xhat,
                                const std::vector<double>& predicted_rho) {
  if (t.records.empty()) throw capability_error("linear_rate_estimate: empty trace");
  require_same_dim(xhat, t.records.front().x, "linear_rate_estimate");

  RateReport r;
  r.target = xhat;
  r.predicted_rho = predicted_rho;

  const std::size_t n = t.records.size();
  std::vector<double> errs(n);
  for (std::size_t k = 0; k < n; ++k) errs[k] = (t.records[k].x - xhat).norm();

  r.arrival_index = -1;
  for (std::size_t k = 0; k < n; ++k) {
    if (errs[k] < 1e-13) {
      r.exact_arrival = true;
      r.arrival_index = t.records[k].k;
      break;
    }
  }

  const double e0 = errs[0];
  r.root_rates.assign(n > 1 ? n - 1 : 0, 0.0);
  for (std::size_t k = 1; k < n; ++k) {
    r.root_rates[k - 1] =
        (errs[k] < 1e-13 || e0 < 1e-13)
            ? 0.0
            : std::pow(errs[k] / e0, 1.0 / static_cast<double>(t.records[k].k));
  }

  // limsup surrogate: max root rate over the last decade of valid entries.
  // Entries after exact arrival are recorded as 0 and excluded; without the
  // exclusion a long post-arrival tail would empty the window.
  std::vector<double> valid;
  for (double rate : r.root_rates) {
    if (rate > 0.0) valid.push_back(rate);
  }
  if (!valid.empty()) {
    const std::size_t window = std::max<std::size_t>(1, valid.size() / 10);
    double best = 0.0;
    for (std::size_t idx = valid.size() - window; idx < valid.size(); ++idx) {
      best = std::max(best, valid[idx]);
    }
    r.limsup_estimate = best;
  }

  // Per-step distance ratios, preferring the recorded distance to the set.
  bool use_dist = true;
  for (const TraceRecord& rec : t.records) {
    if (!rec.dist_to_set) { use_dist = false; break; }
  }
  for (std::size_t k = 0; k + 1 < n; ++k) {
    const double dk = use_dist ? *t.records[k].dist_to_set : errs[k];
    const double dn = use_dist ? *t.records[k + 1].dist_to_set : errs[k + 1];
    r.per_step_ratios.push_back(dk < 1e-13 ? 0.0 : dn / dk);
  }

  r.verdict = (r.exact_arrival || r.limsup_estimate < 1.0 - 1e-6)
                  ? RateReport::Verdict::r_linear
                  : RateReport::Verdict::inconclusive;
  return r;
}

std::string to_string(RateReport::Verdict v) {
  return v == RateReport::Verdict::r_linear ? "R-linear" : "inconclusive";
}

nlohmann::json rate_report_to_json(const RateReport& r) {
  nlohmann::json j;
  j["target"] = std::vector<double>(r.target.data(), r.target.data() + r.target.size());
  j["limsup_estimate"] = r.limsup_estimate;
  j["verdict"] = to_string(r.verdict);
  j["exact_arrival"] = r.exact_arrival;
  if (r.arrival_index >= 0) j["arrival_index"] = r.arrival_index;
  j["root_rates"] = r.root_rates;
  j["per_step_ratios"] = r.per_step_ratios;
  if (!r.predicted_rho.empty()) j["predicted_rho"] = r.predicted_rho;
  return j;
}

Certificate scaled_residual_monotone_check(const Trace& t, const Schedule& s) {
  if (t.kind != "gppa" || t.records.empty() || !t.records.front().scaled_residual) {
    throw capability_error("scaled_residual_monotone_check: requires a generalized proximal trace");
  }
  Certificate cert;
  cert.name = "scaled-residual-monotone";
  cert.citation =
      "(1/c_{k+1})||x_{k+1} - J_{c_{k+1}A} x_{k+1}|| <= "
      "(1/c_k)||x_k - J_{c_k A} x_k|| + (eta_k / c_{k+1}) ||e_k||";
  cert.tolerance = 1e-10;

  for (std::size_t k = 0; k + 1 < t.records.size(); ++k) {
    const int kk = t.records[k].k;
    if (s.c_at(kk + 1) < s.c_at(kk) - 1e-15) {
      cert.mark_not_applicable("c_{k+1} >= c_k unmet at k = " + std::to_string(kk + 1));
      return cert;
    }
  }
  for (std::size_t k = 0; k + 1 < t.records.size(); ++k) {
    const int kk = t.records[k].k;
    const double eta = s.eta_at(kk);
    const double err = eta == 0.0 ? 0.0 : eta * s.error_at(kk).norm();
    const double slack = *t.records[k].scaled_residual + err / s.c_at(kk + 1) -
                         *t.records[k + 1].scaled_residual;
    cert.add_slack(slack, kk);
  }
  cert.finalize();
  return cert;
}

Certificate cluster_inclusion_check(const Trace& t, const MaxMonotoneMap& A, double tol) {
  if (t.kind != "gppa" || t.records.empty() || !t.records.front().scaled_residual) {
    throw capability_error("cluster_inclusion_check: requires a generalized proximal trace");
  }
  if (!A.zero_set) {
    throw capability_error("cluster_inclusion_check: " + A.name + " has no zero-set descriptor");
  }
  Certificate cert;
  cert.name = "cluster-inclusion";
  cert.citation =
      "min_k (1/c_k)||x_k - J_{c_k A} x_k|| < tol and d(x_K, zer A) <= tol "
      "(norm = weak convergence in R^n)";
  cert.tolerance = 0.0;

  double min_sr = std::numeric_limits<double>::infinity();
  int min_k = -1;
  for (const TraceRecord& rec : t.records) {
    if (*rec.scaled_residual < min_sr) {
      min_sr = *rec.scaled_residual;
      min_k = rec.k;
    }
  }
  const double d_final = A.zero_set->distance(t.final_iterate());
  cert.metrics["min_scaled_residual"] = min_sr;
  cert.metrics["min_scaled_residual_k"] = static_cast<double>(min_k);
  cert.metrics["final_distance"] = d_final;
  cert.metrics["tol"] = tol;
  cert.add_slack(tol - min_sr, 0);
  cert.add_slack(tol - d_final, 1);
  cert.finalize();
  return cert;
}

}  // namespace kmlab

#include "kmlab/engines.hpp"

#include <algorithm>
#include <cmath>

#include "kmlab/errors.hpp"
#include "kmlab/km_step.hpp"
#include "kmlab/monotone_ops.hpp"

namespace kmlab {

namespace {

constexpr double kOverflowGuard = 1e12;

Trace run_loop(const OperatorFamily& family, const Schedule& s, const Point& x0, int K,
               bool gppa, const std::string& kind) {
  require_dim(x0, family.dim, "run_" + kind);
  require_finite(x0, "run_" + kind + ": x0");
  if (K < 0) throw input_error("run_" + kind + ": horizon must be >= 0");

  Trace t;
  t.problem_id = family.description;
  t.kind = kind;
  t.seed = s.seed;
  t.horizon = K;
  t.schedule_spec = s.spec;
  t.family = family;
  t.target_set = family.common_fixed_set;
  t.schedule = s;
  t.records.reserve(K + 1);

  if (t.target_set) t.fejer_anchor = t.target_set->project(x0);

  bool lambda_warned = false;
  Point x = x0;
  for (int k = 0; k <= K; ++k) {
    const AveragedMap T = family.at(k);
    const double lambda = s.lambda_at(k);
    if (!lambda_warned && (lambda < -1e-15 || lambda > 1.0 / T.alpha + 1e-15)) {
      t.warnings.push_back("lambda outside [0, 1/alpha] first at k = " + std::to_string(k));
      lambda_warned = true;
    }

    const Point tx = T(x);
    const Point y = relaxed_from_image(x, tx, lambda);

    TraceRecord rec;
    rec.k = k;
    rec.x = x;
    rec.y = y;
    rec.residual = (x - tx).norm();
    if (gppa) rec.scaled_residual = rec.residual / s.c_at(k);
    if (t.target_set) rec.dist_to_set = t.target_set->distance(x);
    t.records.push_back(std::move(rec));

    if (k == K) break;

    const double eta = s.eta_at(k);
    double err_norm = 0.0;
    Point next = y;
    if (eta != 0.0) {
      const Point e = s.error_at(k);
      err_norm = eta * e.norm();
      next = y + eta * e;
    }

    if (t.fejer_anchor) {
      const Point& xbar = *t.fejer_anchor;
      const double eps = err_norm * (2.0 * (y - xbar).norm() + err_norm);
      const double descent =
          lambda * (1.0 / T.alpha - lambda) * t.records.back().residual * t.records.back().residual;
      t.records.back().fejer_slack =
          (x - xbar).squaredNorm() - descent + eps - (next - xbar).squaredNorm();
    }

    if (!next.allFinite() || next.norm() > kOverflowGuard) {
      t.aborted = true;
      t.abort_index = k + 1;
      t.warnings.push_back("iterate overflow at k = " + std::to_string(k + 1) +
                           "; returning partial trace");
      break;
    }
    x = next;
  }
  return t;
}

}  // namespace

Trace run_km(const OperatorFamily& family, const Schedule& s, const Point& x0, int K) {
  return run_loop(family, s, x0, K, /*gppa=*/false, "km");
}

OperatorFamily resolvent_family(const MaxMonotoneMap& A, const Schedule& s) {
  OperatorFamily f;
  f.description = A.name;
  f.dim = A.dim;
  f.common_fixed_set = A.zero_set;
  MaxMonotoneMap Ac = A;
  Schedule sc = s;
  f.at = [Ac, sc](int k) {
    const double ck = sc.c_at(k);
    AveragedMap T;
    T.name = "resolvent(" + Ac.name + ", c=" + std::to_string(ck) + ")";
    T.dim = Ac.dim;
    T.alpha = 0.5;
    T.fixed_set = Ac.zero_set;
    T.evaluate = [Ac, ck](const Point& x) -> Point { return Ac.resolvent_fn(ck, x); };
    return T;
  };
  return f;
}

Trace run_gppa(const MaxMonotoneMap& A, const Schedule& s, const Point& x0, int K) {
  return run_loop(resolvent_family(A, s), s, x0, K, /*gppa=*/true, "gppa");
}

TranslatedTrace run_translated(const OperatorFamily& family, const Schedule& s,
                               const Trace& source, int i, int K) {
  if (i < 0 || i >= static_cast<int>(source.records.size())) {
    throw input_error("run_translated: start index " + std::to_string(i) +
                      " outside the source trace");
  }
  if (K < 0) throw input_error("run_translated: horizon must be >= 0");

  TranslatedTrace out;
  out.start_index = i;
  out.xi.reserve(K + 1);
  out.xi.push_back(source.records[i].x);
  for (int k = 0; k < K; ++k) {
    const AveragedMap T = family.at(k + i);
    out.xi.push_back(relaxed_apply(T, s.lambda_at(k + i), out.xi.back()));
  }
  if (K >= 1 && (out.xi[K] - out.xi[K - 1]).norm() < 1e-12) {
    out.limit_estimate = out.xi[K];
  }
  return out;
}

std::vector<int> default_probe_indices(int K) {
  std::vector<int> probes{0, K / 4, K / 2, 3 * K / 4};
  probes.erase(std::unique(probes.begin(), probes.end()), probes.end());
  return probes;
}

Certificate stability_harness(const OperatorFamily& exact_family,
                              const std::function<Point(int, const Point&)>& perturbed_step,
                              const Schedule& s, const Point& x0, int K,
                              const std::vector<int>& probe_indices) {
  require_dim(x0, exact_family.dim, "stability_harness");

  Certificate cert;
  cert.name = "stability-translation-bounds";
  cert.citation =
      "||x_{i+m} - xi_m(i)|| <= sum_{j=i}^{i+m-1} d_j and "
      "||xi_{k-p}(i+p) - xi_k(i)|| <= sum_{j=i}^{i+p-1} d_j, "
      "d_j = ||F_j x_j - G_j x_j|| + eta_j ||e_j||";
  cert.tolerance = 1e-10;

  for (int i : probe_indices) {
    if (i < 0 || i > K) throw input_error("stability_harness: probe index out of range");
  }

  // Perturbed run plus the effective deviation series.
  std::vector<Point> xs;
  xs.reserve(K + 1);
  xs.push_back(x0);
  std::vector<double> dev(K, 0.0);
  for (int k = 0; k < K; ++k) {
    const Point& x = xs.back();
    const Point fx = perturbed_step(k, x);
    const Point gx = relaxed_apply(exact_family.at(k), s.lambda_at(k), x);
    const double eta = s.eta_at(k);
    Point next = fx;
    double err_norm = 0.0;
    if (eta != 0.0) {
      const Point e = s.error_at(k);
      err_norm = eta * e.norm();
      next = fx + eta * e;
    }
    dev[k] = (fx - gx).norm() + err_norm;
    if (!next.allFinite() || next.norm() > kOverflowGuard) {
      cert.mark_not_applicable("perturbed run overflowed at k = " + std::to_string(k + 1));
      return cert;
    }
    xs.push_back(std::move(next));
  }

  std::vector<double> dev_prefix(K + 1, 0.0);
  for (int k = 0; k < K; ++k) dev_prefix[k + 1] = dev_prefix[k] + dev[k];
  cert.metrics["deviation_sum"] = dev_prefix[K];
  {
    double tail = 0.0;
    for (int j = std::max(0, K - 10); j < K; ++j) tail += dev[j];
    cert.metrics["tail_deviation_sum_10"] = tail;
  }

  // Exact translated sequences from each probe index.
  std::vector<std::vector<Point>> xi(probe_indices.size());
  for (std::size_t p = 0; p < probe_indices.size(); ++p) {
    const int i = probe_indices[p];
    xi[p].reserve(K - i + 1);
    xi[p].push_back(xs[i]);
    for (int k = 0; k < K - i; ++k) {
      const AveragedMap T = exact_family.at(k + i);
      xi[p].push_back(relaxed_apply(T, s.lambda_at(k + i), xi[p].back()));
    }
  }

  int slack_index = 0;
  // Bound 1: perturbed iterates against each translated sequence.
  for (std::size_t p = 0; p < probe_indices.size(); ++p) {
    const int i = probe_indices[p];
    for (int m = 1; m <= K - i; ++m) {
      const double lhs = (xs[i + m] - xi[p][m]).norm();
      const double rhs = dev_prefix[i + m] - dev_prefix[i];
      cert.add_slack(rhs - lhs, slack_index++);
    }
  }
  // Bound 2: cross-translation consistency for probe pairs.
  for (std::size_t a = 0; a < probe_indices.size(); ++a) {
    for (std::size_t b = a + 1; b < probe_indices.size(); ++b) {
      const int i = probe_indices[a];
      const int ip = probe_indices[b];
      const int p = ip - i;
      if (p <= 0) continue;
      const double rhs = dev_prefix[ip] - dev_prefix[i];
      for (int k = p; k <= K - i; ++k) {
        if (k - p > K - ip) break;
        const double lhs = (xi[b][k - p] - xi[a][k]).norm();
        cert.add_slack(rhs - lhs, slack_index++);
      }
    }
  }

  // Do the translated sequences approach a common point?
  double max_pairwise = 0.0;
  for (std::size_t a = 0; a < probe_indices.size(); ++a) {
    for (std::size_t b = a + 1; b < probe_indices.size(); ++b) {
      max_pairwise = std::max(max_pairwise, (xi[a].back() - xi[b].back()).norm());
    }
  }
  cert.metrics["max_pairwise_limit_distance"] = max_pairwise;
  if (!probe_indices.empty()) {
    const auto longest_burn_in =
        std::max_element(probe_indices.begin(), probe_indices.end()) - probe_indices.begin();
    cert.metrics["final_to_common_limit"] = (xs[K] - xi[longest_burn_in].back()).norm();
  }

  cert.finalize();
  return cert;
}

}  // namespace kmlab

#include "kmlab/experiment.hpp"

#include <filesystem>
#include <fstream>

#include "kmlab/diagnostics.hpp"
#include "kmlab/engines.hpp"
#include "kmlab/errors.hpp"
#include "kmlab/km_step.hpp"
#include "kmlab/monotone_catalog.hpp"
#include "kmlab/monotone_ops.hpp"
#include "kmlab/operator_catalog.hpp"
#include "kmlab/rng.hpp"

namespace kmlab {

namespace {

// Stream tags for seeded draws that must not collide with the per-iteration
// error streams (which use indices 0..K).
constexpr std::uint64_t kX0Stream = 0x78300000001ULL;
constexpr std::uint64_t kSampleStream = 0x5a170000001ULL;

Certificate wrap_report(const std::string& name, double worst_slack, double tolerance) {
  Certificate c;
  c.name = name;
  c.tolerance = tolerance;
  c.add_slack(worst_slack, 0);
  c.finalize();
  return c;
}

}  // namespace

bool ExperimentResult::all_passed() const {
  for (const Certificate& c : certificates) {
    if (c.verdict != Certificate::Verdict::pass) return false;
  }
  return true;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  ExperimentResult result;

  std::optional<MaxMonotoneMap> A;
  OperatorFamily family;
  if (cfg.monotone) {
    A = catalog_monotone(cfg.problem);
  } else {
    family = stationary_family(catalog_nonexpansive(cfg.problem));
  }
  const Eigen::Index dim = cfg.monotone ? A->dim : family.dim;

  const Schedule s = make_schedule(cfg.schedule_spec, dim, cfg.seed);

  Point x0;
  if (cfg.x0) {
    x0 = *cfg.x0;
  } else {
    auto gen = engine_at(cfg.seed, kX0Stream);
    x0 = gaussian_point(gen, dim, cfg.x0_random_scale);
  }

  const int K = cfg.horizon;
  if (cfg.monotone) {
    result.trace = run_gppa(*A, s, x0, K);
  } else {
    result.trace = run_km(family, s, x0, K);
  }
  const Trace& t = result.trace;

  auto alpha_at = [&t](int k) { return t.family.at(k).alpha; };
  result.summability = summability_probe(s, alpha_at, K);
  result.summability.trend_threshold = cfg.tolerance_or("trend-threshold", 0.99);

  const double subreg_delta =
      cfg.tolerance_or("subreg-delta", std::max(1.0, 2.0 * x0.norm()));
  const int subreg_samples = static_cast<int>(cfg.tolerance_or("subreg-samples", 500));

  for (const std::string& name : cfg.certificates) {
    if (name == "quasi-fejer") {
      if (!t.fejer_anchor) {
        throw capability_error("quasi-fejer: no fixed/zero set descriptor to anchor against");
      }
      result.certificates.push_back(
          quasi_fejer_certificate(t, *t.fejer_anchor, alpha_at, s));
    } else if (name == "residual-summability") {
      SummabilityReport rs = residual_summability(t, alpha_at, s);
      result.reports["residual_summability"] = summability_to_json(rs);
      Certificate c = wrap_report("residual-summability", 0.0, 0.0);
      c.citation = "partial sums of lambda_k(1/alpha_k - lambda_k)||x_k - T_k x_k||^2";
      c.metrics["partial_sum"] = rs.partial_sums.at("weighted_residual_sq");
      c.metrics["min_residual"] = rs.min_residual;
      result.certificates.push_back(std::move(c));
    } else if (name == "scaled-residual-monotone") {
      result.certificates.push_back(scaled_residual_monotone_check(t, s));
    } else if (name == "cluster-inclusion") {
      result.certificates.push_back(
          cluster_inclusion_check(t, *A, cfg.tolerance_or("cluster-inclusion", 1e-8)));
    } else if (name == "contraction") {
      const SetDescriptor& target = *t.target_set;
      const Point anchor = target.project(x0);
      SubregularityWitness w;
      if (cfg.monotone) {
        w = estimate_subregularity(*A->dist_zero_image, target, anchor, subreg_delta,
                                   subreg_samples, mix_seed(cfg.seed, kSampleStream));
      } else {
        const AveragedMap T0 = t.family.at(0);
        auto residual = [T0](const Point& x) { return (x - T0.evaluate(x)).norm(); };
        w = estimate_subregularity(residual, target, anchor, subreg_delta, subreg_samples,
                                   mix_seed(cfg.seed, kSampleStream));
      }
      result.certificates.push_back(contraction_check(t, target, alpha_at, s, w));
    } else if (name == "linear-rate") {
      const Point xhat =
          t.target_set ? t.target_set->project(t.final_iterate()) : t.final_iterate();
      const RateReport report = linear_rate_estimate(t, xhat);
      result.reports["linear_rate"] = rate_report_to_json(report);
      Certificate c;
      c.name = "linear-rate";
      c.citation = "limsup_k (||x_k - xhat|| / ||x_0 - xhat||)^{1/k} < 1";
      c.tolerance = 0.0;
      c.metrics["limsup_estimate"] = report.limsup_estimate;
      c.add_slack(report.exact_arrival ? 1.0 : (1.0 - 1e-6) - report.limsup_estimate, 0);
      c.finalize();
      result.certificates.push_back(std::move(c));
    } else if (name == "stability") {
      const OperatorFamily& fam = t.family;
      auto own_step = [&fam, &s](int k, const Point& x) {
        return relaxed_apply(fam.at(k), s.lambda_at(k), x);
      };
      const std::vector<int> probes = cfg.probes.empty() ? default_probe_indices(K) : cfg.probes;
      result.certificates.push_back(stability_harness(fam, own_step, s, x0, K, probes));
    } else if (name == "subreg-transfer") {
      const Point anchor = A->zero_set->project(x0);
      const SubregularityWitness w =
          estimate_subregularity(*A->dist_zero_image, *A->zero_set, anchor, subreg_delta,
                                 subreg_samples, mix_seed(cfg.seed, kSampleStream));
      result.certificates.push_back(
          subreg_transfer_check(*A, s.c_at(0), w, subreg_samples, mix_seed(cfg.seed, kSampleStream + 1)));
    } else if (name == "resolvent-rescale") {
      Certificate agg;
      agg.name = "resolvent-rescale";
      agg.citation = "J_{gamma A}(x) = J_{mu A}((mu/gamma) x + (1 - mu/gamma) J_{gamma A} x)";
      agg.tolerance = 1e-9;
      for (int i = 0; i < 100; ++i) {
        auto gen = engine_at(cfg.seed, kSampleStream + 100 + i);
        std::uniform_real_distribution<double> unif(0.1, 10.0);
        const double gamma = unif(gen), mu = unif(gen);
        const Point x = gaussian_point(gen, dim, 3.0);
        const Certificate one = resolvent_rescale(*A, gamma, mu, x);
        agg.add_slack(one.worst_slack, i);
      }
      agg.finalize();
      result.certificates.push_back(std::move(agg));
    } else if (name == "resolvent-firm") {
      Certificate agg;
      agg.name = "resolvent-firm";
      agg.citation = "||J_{gamma A} x - z||^2 + ||(Id - J_{gamma A}) x||^2 <= ||x - z||^2";
      agg.tolerance = 1e-10;
      for (int i = 0; i < 100; ++i) {
        auto gen = engine_at(cfg.seed, kSampleStream + 300 + i);
        std::uniform_real_distribution<double> unif(0.1, 10.0);
        const double gamma = unif(gen);
        const Point x = gaussian_point(gen, dim, 3.0);
        const Point z = A->zero_set->project(gaussian_point(gen, dim, 3.0));
        const Certificate one = check_resolvent_firm(*A, gamma, x, z);
        agg.add_slack(one.worst_slack, i);
      }
      agg.finalize();
      result.certificates.push_back(std::move(agg));
    }
  }
  return result;
}

std::string config_hash(const nlohmann::json& raw) {
  const std::string canonical = raw.dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : canonical) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<std::string> export_outputs(const ExperimentResult& result,
                                        const ExperimentConfig& cfg,
                                        const std::string& out_dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw io_error("export: cannot create output directory " + out_dir);

  auto write_file = [&](const std::string& name, const std::string& content) -> std::string {
    const fs::path path = fs::path(out_dir) / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw io_error("export: cannot open " + path.string());
    f << content;
    if (!f) throw io_error("export: write failed for " + path.string());
    return path.string();
  };

  std::vector<std::string> written;
  written.push_back(write_file("trace.csv", trace_to_csv(result.trace)));

  nlohmann::json certs;
  certs["certificates"] = nlohmann::json::array();
  for (const Certificate& c : result.certificates) {
    certs["certificates"].push_back(certificate_to_json(c));
  }
  if (!result.reports.is_null()) certs["reports"] = result.reports;
  certs["trace"] = trace_to_json(result.trace);
  written.push_back(write_file("certificates.json", certs.dump(2) + "\n"));

  written.push_back(
      write_file("summability.json", summability_to_json(result.summability).dump(2) + "\n"));

  nlohmann::json manifest{
      {"config_hash", config_hash(cfg.raw)},
      {"seed", cfg.seed},
      {"outputs", {{"trace_csv", "trace.csv"},
                   {"certificates", "certificates.json"},
                   {"summability", "summability.json"}}},
  };
  written.push_back(write_file("manifest.json", manifest.dump(2) + "\n"));
  return written;
}

}  // namespace kmlab

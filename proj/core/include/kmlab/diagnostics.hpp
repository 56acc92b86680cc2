#ifndef KMLAB_DIAGNOSTICS_HPP
#define KMLAB_DIAGNOSTICS_HPP

#include <functional>
#include <nlohmann/json_fwd.hpp>
#include <vector>

#include "kmlab/certificate.hpp"
#include "kmlab/monotone_map.hpp"
#include "kmlab/summability.hpp"
#include "kmlab/trace.hpp"

namespace kmlab {

/// Per-step quasi-Fejer certificate with respect to xbar:
///   ||x_{k+1}-xbar||^2 <= ||x_k-xbar||^2
///                         - lambda_k (1/alpha_k - lambda_k) ||x_k - T_k x_k||^2
///                         + eps_k,
///   eps_k = eta_k ||e_k|| (2 ||y_k - xbar|| + eta_k ||e_k||),
/// using the recorded pre-error iterates y_k.  Precondition: xbar is fixed
/// under every applied map within 1e-10.
Certificate quasi_fejer_certificate(const Trace& t, const Point& xbar,
                                    const std::function<double(int)>& alpha_at,
                                    const Schedule& s);

/// Partial sums and trend of the weighted squared-residual series
/// lambda_k (1/alpha_k - lambda_k) ||x_k - T_k x_k||^2, plus the smallest
/// residual seen so far (vanishing-residual evidence).
SummabilityReport residual_summability(const Trace& t,
                                       const std::function<double(int)>& alpha_at,
                                       const Schedule& s);

/// Samples the local error-bound modulus on B[anchor; delta]:
///   kappa_hat = max d(x, set) / residual_fn(x)
/// over seeded ball-uniform samples, excluding points with residual < 1e-13.
/// An excluded point with d(x, set) > 1e-10 signals failure (kappa = inf).
/// The returned witness is marked empirical.
SubregularityWitness estimate_subregularity(const std::function<double(const Point&)>& residual_fn,
                                            const SetDescriptor& set, const Point& anchor,
                                            double delta, int samples, std::uint64_t seed);

/// Transfer of the error bound through the resolvent.  Measures the modulus
/// of Id - J_{gamma A} on B[anchor; delta] and checks it against 1 + kappa/gamma;
/// on maps with closed-form d(0, Ax) also measures the modulus of A and checks
/// it against kappa' * gamma (kappa' the measured resolvent-residual modulus).
/// Tolerance 1e-6 on both bounds.  Empirical witnesses are inflated by 1e-3.
Certificate subreg_transfer_check(const MaxMonotoneMap& A, double gamma,
                                  const SubregularityWitness& witness_for_A, int samples,
                                  std::uint64_t seed);

/// Per-step contraction of the distance to the target set:
///   d(x_{k+1}, set) <= rho_k d(x_k, set),
///   rho_k = (1 - lambda_k (1 - lambda_k alpha_k) / (alpha_k kappa_k^2))^{1/2},
/// with kappa_k = kappa on KM runs and kappa_k = 1 + kappa/c_k on generalized
/// proximal runs.  Applicable to exact traces with lambda_k strictly inside
/// (0, 1/alpha_k) whose iterates stay in B[anchor; delta].
Certificate contraction_check(const Trace& t, const SetDescriptor& set,
                              const std::function<double(int)>& alpha_at, const Schedule& s,
                              const SubregularityWitness& witness);

struct RateReport {
  Point target;
  /// Normalized k-th roots (||x_k - target|| / ||x_0 - target||)^(1/k), k >= 1;
  /// scale-invariant finite-horizon surrogate for the asymptotic root rate.
  std::vector<double> root_rates;
  double limsup_estimate = 0.0;
  std::vector<double> per_step_ratios;
  std::vector<double> predicted_rho;
  bool exact_arrival = false;
  int arrival_index = -1;
  enum class Verdict { r_linear, inconclusive } verdict = Verdict::inconclusive;
};

/// Root-rate estimate toward xhat.  The limsup estimate is the maximum root
/// rate over the last decade of k; entries after exact arrival (distance
/// below 1e-13) are recorded as 0 and excluded.  Verdict is r_linear when the
/// estimate is below 1 - 1e-6 or the run arrived exactly.
RateReport linear_rate_estimate(const Trace& t, const Point& xhat,
                                const std::vector<double>& predicted_rho = {});

std::string to_string(RateReport::Verdict v);
nlohmann::json rate_report_to_json(const RateReport& r);

/// Monotonicity of the scaled resolvent residual under nondecreasing c:
///   r_{k+1}/c_{k+1} <= r_k/c_k + (eta_k / c_{k+1}) ||e_k||.
/// Not applicable when c decreases; requires a generalized proximal trace.
Certificate scaled_residual_monotone_check(const Trace& t, const Schedule& s);

/// Finite-dimensional cluster-inclusion surrogate: the smallest scaled
/// residual must fall below tol AND the final iterate must be within tol of
/// zer A (in R^n weak and norm convergence coincide).
Certificate cluster_inclusion_check(const Trace& t, const MaxMonotoneMap& A, double tol);

}  // namespace kmlab

#endif

#ifndef KMLAB_ENGINES_HPP
#define KMLAB_ENGINES_HPP

#include <functional>
#include <vector>

#include "kmlab/certificate.hpp"
#include "kmlab/monotone_map.hpp"
#include "kmlab/trace.hpp"

namespace kmlab {

/// Inexact non-stationary relaxed iteration
///   x_{k+1} = x_k + lambda_k (T_k x_k - x_k) + eta_k e_k.
/// Records K+1 entries; y_k is captured before the error is added.
/// lambda_k outside [0, 1/alpha_k] records a hypothesis warning and the run
/// proceeds.  The run aborts (partial trace, aborted flag) when an iterate
/// overflows ||x|| > 1e12 or turns non-finite.
Trace run_km(const OperatorFamily& family, const Schedule& s, const Point& x0, int K);

/// Generalized proximal iteration: run_km with T_k = J_{c_k A} (alpha = 1/2),
/// additionally recording the scaled residual ||x_k - J_{c_k A} x_k|| / c_k.
Trace run_gppa(const MaxMonotoneMap& A, const Schedule& s, const Point& x0, int K);

/// The family T_k = J_{c_k A} used by run_gppa; exposed so translated runs
/// and the stability harness can step through the same maps.
OperatorFamily resolvent_family(const MaxMonotoneMap& A, const Schedule& s);

/// Exact translated run: xi_0(i) = x_i (copied bitwise from the source trace),
/// xi_{k+1}(i) = (1-lambda_{k+i}) xi_k(i) + lambda_{k+i} T_{k+i} xi_k(i),
/// no error injection.  Shares the engine's evaluation order, so on an exact
/// source xi_k(i) reproduces x_{i+k} bitwise.
TranslatedTrace run_translated(const OperatorFamily& family, const Schedule& s,
                               const Trace& source, int i, int K);

/// Runs the perturbed/approximate sequence x_{k+1} = F_k x_k + eta_k e_k
/// (F_k = perturbed_step), measures the effective per-step deviation
///   d_k = ||F_k x_k - G_k x_k|| + eta_k ||e_k||
/// against the exact maps G_k = (1-lambda_k) Id + lambda_k T_k, and checks
/// the two translation bounds for every probe start index i:
///   ||x_{i+m} - xi_m(i)||           <= sum_{j=i}^{i+m-1} d_j
///   ||xi_{k-p}(i') - xi_k(i)||      <= sum_{j=i}^{i'-1} d_j   (i < i', p = i'-i)
/// with slack tolerance 1e-10.  Metrics report the deviation sum, the maximum
/// pairwise distance between translated limits, and the distance from the
/// perturbed final iterate to the common limit.
Certificate stability_harness(const OperatorFamily& exact_family,
                              const std::function<Point(int, const Point&)>& perturbed_step,
                              const Schedule& s, const Point& x0, int K,
                              const std::vector<int>& probe_indices);

/// Default probe indices {0, K/4, K/2, 3K/4}.
std::vector<int> default_probe_indices(int K);

}  // namespace kmlab

#endif

#ifndef KMLAB_MONOTONE_MAP_HPP
#define KMLAB_MONOTONE_MAP_HPP

#include <functional>
#include <optional>
#include <string>

#include "kmlab/point.hpp"
#include "kmlab/set_descriptor.hpp"

namespace kmlab {

/// A maximally monotone operator A on R^n, exposed through its resolvent
/// J_{gamma A} = (Id + gamma A)^{-1}.  Catalog instances keep the resolvent
/// in closed form; no inner iterative solver.
struct MaxMonotoneMap {
  std::string name;
  Eigen::Index dim = 0;
  /// (gamma, x) -> J_{gamma A}(x), gamma > 0.
  std::function<Point(double, const Point&)> resolvent_fn;
  /// Graph membership test ((x,u), tol), when representable.
  std::optional<std::function<bool(const Point&, const Point&, double)>> graph_contains;
  /// Descriptor of zer A, when known in closed form.
  std::optional<SetDescriptor> zero_set;
  /// Closed-form d(0, A(x)), when available (+inf where A(x) is empty).
  std::optional<std::function<double(const Point&)>> dist_zero_image;
};

/// A local error-bound witness: d(x, S) <= kappa * residual(x) is claimed to
/// hold on the ball B[anchor; delta].  `empirical` marks sampled estimates,
/// which downstream certificates inflate by a small safety factor.
struct SubregularityWitness {
  Point anchor;
  double kappa = 0.0;
  double delta = 0.0;
  bool empirical = false;

  bool failed() const { return !std::isfinite(kappa); }
};

}  // namespace kmlab

#endif

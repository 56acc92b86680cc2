#ifndef KMLAB_AVERAGED_MAP_HPP
#define KMLAB_AVERAGED_MAP_HPP

#include <functional>
#include <optional>
#include <string>

#include "kmlab/point.hpp"
#include "kmlab/set_descriptor.hpp"

namespace kmlab {

/// An evaluatable nonexpansive map on R^n with a declared averagedness
/// constant alpha in (0,1] and, when known in closed form, its fixed set.
/// Immutable after construction; evaluation is a pure function.
struct AveragedMap {
  std::string name;
  Eigen::Index dim = 0;
  double alpha = 1.0;
  std::function<Point(const Point&)> evaluate;
  std::optional<SetDescriptor> fixed_set;

  Point operator()(const Point& x) const {
    require_dim(x, dim, name);
    require_finite(x, name);
    return evaluate(x);
  }
};

/// A sequence of averaged maps T_k, defined for every k >= 0.
struct OperatorFamily {
  std::string description;
  Eigen::Index dim = 0;
  std::function<AveragedMap(int)> at;
  /// Descriptor of the common fixed set, when known in closed form.
  std::optional<SetDescriptor> common_fixed_set;
};

/// The stationary family T_k == T.
inline OperatorFamily stationary_family(const AveragedMap& T) {
  OperatorFamily f;
  f.description = T.name;
  f.dim = T.dim;
  f.common_fixed_set = T.fixed_set;
  AveragedMap copy = T;
  f.at = [copy](int) { return copy; };
  return f;
}

}  // namespace kmlab

#endif

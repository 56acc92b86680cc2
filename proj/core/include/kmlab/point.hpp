#ifndef KMLAB_POINT_HPP
#define KMLAB_POINT_HPP

#include <Eigen/Core>
#include <string>

#include "kmlab/errors.hpp"

namespace kmlab {

/// An element of the ambient space R^n.  Dense real coordinates; all the
/// Hilbert-space structure we need (inner product, norm) comes with it.
using Point = Eigen::VectorXd;

inline bool is_finite(const Point& x) { return x.allFinite(); }

inline void require_finite(const Point& x, const std::string& who) {
  if (!x.allFinite()) throw input_error(who + ": non-finite coordinates");
}

inline void require_dim(const Point& x, Eigen::Index dim, const std::string& who) {
  if (x.size() != dim) {
    throw dimension_error(who + ": expected dimension " + std::to_string(dim) +
                          ", got " + std::to_string(x.size()));
  }
}

inline void require_same_dim(const Point& a, const Point& b, const std::string& who) {
  if (a.size() != b.size()) {
    throw dimension_error(who + ": dimension mismatch " + std::to_string(a.size()) +
                          " vs " + std::to_string(b.size()));
  }
}

}  // namespace kmlab

#endif

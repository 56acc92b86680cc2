#ifndef KMLAB_SET_DESCRIPTOR_HPP
#define KMLAB_SET_DESCRIPTOR_HPP

#include <functional>
#include <string>
#include <vector>

#include "kmlab/point.hpp"

namespace kmlab {

/// A nonempty closed convex set, exposed through its projector.
/// `contains` defaults to a residual test against the projection.
struct SetDescriptor {
  std::string name;
  Eigen::Index dim = 0;
  bool is_affine = false;
  std::function<Point(const Point&)> project;
  std::function<bool(const Point&, double)> contains;

  double distance(const Point& x) const { return (x - project(x)).norm(); }
};

SetDescriptor singleton_set(const Point& p);
SetDescriptor whole_space(Eigen::Index dim);
SetDescriptor box_set(const Point& lower, const Point& upper);
SetDescriptor ball_set(const Point& center, double radius);
SetDescriptor halfspace_set(const Point& normal, double offset);

/// Affine subspace through `base` spanned by `directions` (need not be
/// orthonormal; an orthonormal basis is built internally).
SetDescriptor affine_subspace(const Point& base, const std::vector<Point>& directions);

/// Solution set { x : Qx = -b } of a consistent symmetric linear system,
/// projected via the pseudo-inverse.  Throws config_error if inconsistent.
SetDescriptor affine_solution_set(const Eigen::MatrixXd& Q, const Point& b);

}  // namespace kmlab

#endif

#include "kmlab/set_descriptor.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "kmlab/errors.hpp"

namespace kmlab {

namespace {

SetDescriptor with_default_contains(SetDescriptor s) {
  auto project = s.project;
  s.contains = [project](const Point& x, double tol) {
    return (x - project(x)).norm() <= tol;
  };
  return s;
}

}  // namespace

SetDescriptor singleton_set(const Point& p) {
  SetDescriptor s;
  s.name = "singleton";
  s.dim = p.size();
  s.is_affine = true;
  Point anchor = p;
  s.project = [anchor](const Point&) { return anchor; };
  return with_default_contains(std::move(s));
}

SetDescriptor whole_space(Eigen::Index dim) {
  SetDescriptor s;
  s.name = "whole-space";
  s.dim = dim;
  s.is_affine = true;
  s.project = [](const Point& x) { return x; };
  s.contains = [](const Point&, double) { return true; };
  return s;
}

SetDescriptor box_set(const Point& lower, const Point& upper) {
  require_same_dim(lower, upper, "box_set");
  for (Eigen::Index i = 0; i < lower.size(); ++i) {
    if (lower[i] > upper[i]) throw config_error("box_set: lower > upper at coordinate " + std::to_string(i));
  }
  SetDescriptor s;
  s.name = "box";
  s.dim = lower.size();
  s.is_affine = false;
  Point lo = lower, up = upper;
  s.project = [lo, up](const Point& x) -> Point {
    return x.cwiseMax(lo).cwiseMin(up);
  };
  return with_default_contains(std::move(s));
}

SetDescriptor ball_set(const Point& center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw config_error("ball_set: radius must be positive");
  SetDescriptor s;
  s.name = "ball";
  s.dim = center.size();
  s.is_affine = false;
  Point c = center;
  s.project = [c, radius](const Point& x) -> Point {
    const Point d = x - c;
    const double n = d.norm();
    if (n <= radius) return x;
    return c + (radius / n) * d;
  };
  return with_default_contains(std::move(s));
}

SetDescriptor halfspace_set(const Point& normal, double offset) {
  const double nn = normal.squaredNorm();
  if (nn <= 0.0) throw config_error("halfspace_set: zero normal vector");
  SetDescriptor s;
  s.name = "halfspace";
  s.dim = normal.size();
  s.is_affine = false;
  Point a = normal;
  s.project = [a, nn, offset](const Point& x) -> Point {
    const double excess = a.dot(x) - offset;
    if (excess <= 0.0) return x;
    return x - (excess / nn) * a;
  };
  return with_default_contains(std::move(s));
}

SetDescriptor affine_subspace(const Point& base, const std::vector<Point>& directions) {
  SetDescriptor s;
  s.name = "affine-subspace";
  s.dim = base.size();
  s.is_affine = true;

  // Orthonormal basis of the direction space (modified Gram-Schmidt).
  std::vector<Point> basis;
  for (const Point& d : directions) {
    require_same_dim(d, base, "affine_subspace");
    Point v = d;
    for (const Point& b : basis) v -= b.dot(v) * b;
    const double n = v.norm();
    if (n > 1e-12) basis.push_back(v / n);
  }
  Point p = base;
  s.project = [p, basis](const Point& x) -> Point {
    Point r = x - p;
    Point y = p;
    for (const Point& b : basis) y += b.dot(r) * b;
    return y;
  };
  return with_default_contains(std::move(s));
}

SetDescriptor affine_solution_set(const Eigen::MatrixXd& Q, const Point& b) {
  if (Q.rows() != Q.cols() || Q.rows() != b.size()) {
    throw dimension_error("affine_solution_set: Q must be square and match b");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(Q);
  if (eig.info() != Eigen::Success) throw config_error("affine_solution_set: eigendecomposition failed");
  const Eigen::VectorXd evals = eig.eigenvalues();
  const Eigen::MatrixXd V = eig.eigenvectors();
  const double cutoff = 1e-12 * std::max(1.0, evals.cwiseAbs().maxCoeff());

  // Consistency: -b must lie in range(Q), i.e. have no component along ker Q.
  Eigen::VectorXd bt = V.transpose() * b;
  for (Eigen::Index i = 0; i < evals.size(); ++i) {
    if (std::abs(evals[i]) <= cutoff && std::abs(bt[i]) > 1e-10) {
      throw config_error("affine_solution_set: system Qx = -b is inconsistent (empty zero set)");
    }
  }
  Eigen::VectorXd inv = evals;
  for (Eigen::Index i = 0; i < inv.size(); ++i) {
    inv[i] = std::abs(evals[i]) > cutoff ? 1.0 / evals[i] : 0.0;
  }
  Eigen::MatrixXd pinv = V * inv.asDiagonal() * V.transpose();

  SetDescriptor s;
  s.name = "affine-solution-set";
  s.dim = b.size();
  s.is_affine = true;
  Eigen::MatrixXd Qc = Q;
  Point bc = b;
  // Minimum-norm correction lies in range(Q) = (ker Q)^perp, so this is the
  // orthogonal projection onto { x : Qx = -b }.
  s.project = [Qc, bc, pinv](const Point& x) -> Point {
    return x - pinv * (Qc * x + bc);
  };
  return with_default_contains(std::move(s));
}

}  // namespace kmlab

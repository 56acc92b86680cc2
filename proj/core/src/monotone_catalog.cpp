#include "kmlab/monotone_catalog.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <nlohmann/json.hpp>

#include "kmlab/errors.hpp"

namespace kmlab {

double soft_threshold(double x, double t) {
  if (x > t) return x - t;
  if (x < -t) return x + t;
  return 0.0;
}

namespace {

using nlohmann::json;

double need_number(const json& spec, const char* key) {
  if (!spec.contains(key) || !spec[key].is_number()) {
    throw config_error(std::string("monotone spec: missing numeric field '") + key + "'");
  }
  return spec[key].get<double>();
}

Eigen::Index need_dim(const json& spec) {
  if (!spec.contains("dim") || !spec["dim"].is_number_integer() || spec["dim"].get<int>() <= 0) {
    throw config_error("monotone spec: missing positive integer field 'dim'");
  }
  return spec["dim"].get<Eigen::Index>();
}

Point need_vector(const json& spec, const char* key) {
  if (!spec.contains(key) || !spec[key].is_array() || spec[key].empty()) {
    throw config_error(std::string("monotone spec: missing vector field '") + key + "'");
  }
  Point v(static_cast<Eigen::Index>(spec[key].size()));
  Eigen::Index i = 0;
  for (const auto& c : spec[key]) {
    if (!c.is_number()) throw config_error(std::string("monotone spec: non-numeric entry in '") + key + "'");
    v[i++] = c.get<double>();
  }
  return v;
}

Eigen::MatrixXd need_matrix(const json& spec, const char* key) {
  if (!spec.contains(key) || !spec[key].is_array() || spec[key].empty()) {
    throw config_error(std::string("monotone spec: missing matrix field '") + key + "'");
  }
  const auto& rows = spec[key];
  const Eigen::Index n = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd M(n, n);
  Eigen::Index r = 0;
  for (const auto& row : rows) {
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != n) {
      throw config_error(std::string("monotone spec: '") + key + "' must be a square row-major matrix");
    }
    Eigen::Index c = 0;
    for (const auto& entry : row) {
      if (!entry.is_number()) throw config_error(std::string("monotone spec: non-numeric entry in '") + key + "'");
      M(r, c++) = entry.get<double>();
    }
    ++r;
  }
  return M;
}

MaxMonotoneMap scaled_identity_monotone(double r, Eigen::Index dim) {
  if (r < 0.0 || !std::isfinite(r)) throw config_error("scaled-identity: r must be >= 0");
  MaxMonotoneMap A;
  A.name = "scaled-identity(r=" + std::to_string(r) + ")";
  A.dim = dim;
  A.resolvent_fn = [r](double gamma, const Point& x) -> Point {
    return x / (1.0 + gamma * r);
  };
  A.graph_contains = [r](const Point& x, const Point& u, double tol) {
    return (u - r * x).norm() <= tol;
  };
  A.zero_set = (r > 0.0) ? singleton_set(Point::Zero(dim)) : whole_space(dim);
  A.dist_zero_image = [r](const Point& x) { return r * x.norm(); };
  return A;
}

MaxMonotoneMap l1_subdifferential(double w, Eigen::Index dim) {
  if (w < 0.0 || !std::isfinite(w)) throw config_error("l1: weight must be >= 0");
  MaxMonotoneMap A;
  A.name = "l1(w=" + std::to_string(w) + ")";
  A.dim = dim;
  A.resolvent_fn = [w](double gamma, const Point& x) -> Point {
    Point u(x.size());
    const double t = gamma * w;
    for (Eigen::Index i = 0; i < x.size(); ++i) u[i] = soft_threshold(x[i], t);
    return u;
  };
  // Per-coordinate subdifferential interval test.
  A.graph_contains = [w](const Point& x, const Point& u, double tol) {
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      if (x[i] > 0.0) {
        if (std::abs(u[i] - w) > tol) return false;
      } else if (x[i] < 0.0) {
        if (std::abs(u[i] + w) > tol) return false;
      } else {
        if (std::abs(u[i]) > w + tol) return false;
      }
    }
    return true;
  };
  A.zero_set = (w > 0.0) ? singleton_set(Point::Zero(dim)) : whole_space(dim);
  A.dist_zero_image = [w](const Point& x) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      if (x[i] != 0.0) s += w * w;
    }
    return std::sqrt(s);
  };
  return A;
}

MaxMonotoneMap affine_quadratic(const Eigen::MatrixXd& Q, const Point& b) {
  if (Q.rows() != b.size()) throw dimension_error("affine-quadratic: Q and b dimension mismatch");
  if (!Q.isApprox(Q.transpose(), 1e-12)) throw config_error("affine-quadratic: Q must be symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(Q);
  if (eig.eigenvalues().minCoeff() < -1e-10) {
    throw config_error("affine-quadratic: Q must be positive semidefinite");
  }

  MaxMonotoneMap A;
  A.name = "affine-quadratic(n=" + std::to_string(Q.rows()) + ")";
  A.dim = Q.rows();
  Eigen::MatrixXd Qc = Q;
  Point bc = b;
  A.resolvent_fn = [Qc, bc](double gamma, const Point& x) -> Point {
    Eigen::MatrixXd M = gamma * Qc;
    M.diagonal().array() += 1.0;
    return Eigen::LLT<Eigen::MatrixXd>(M).solve(x - gamma * bc);
  };
  A.graph_contains = [Qc, bc](const Point& x, const Point& u, double tol) {
    return (u - (Qc * x + bc)).norm() <= tol;
  };
  try {
    A.zero_set = affine_solution_set(Q, b);
  } catch (const config_error&) {
    // Qx = -b inconsistent: zer A is empty, so no descriptor is attached.
  }
  A.dist_zero_image = [Qc, bc](const Point& x) { return (Qc * x + bc).norm(); };
  return A;
}

bool box_normal_cone_contains(const Point& lo, const Point& up, const Point& x,
                              const Point& u, double tol) {
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x[i] < lo[i] - tol || x[i] > up[i] + tol) return false;
    const bool at_lower = x[i] <= lo[i] + tol;
    const bool at_upper = x[i] >= up[i] - tol;
    if (at_lower && at_upper) continue;  // degenerate coordinate: any u[i]
    if (at_lower) {
      if (u[i] > tol) return false;
    } else if (at_upper) {
      if (u[i] < -tol) return false;
    } else {
      if (std::abs(u[i]) > tol) return false;
    }
  }
  return true;
}

MaxMonotoneMap normal_cone(SetDescriptor C, const std::string& name) {
  MaxMonotoneMap A;
  A.name = name;
  A.dim = C.dim;
  auto project = C.project;
  A.resolvent_fn = [project](double, const Point& x) -> Point { return project(x); };
  auto contains = C.contains;
  A.dist_zero_image = [contains](const Point& x) {
    // 0 is in the normal cone at every point of C; A(x) is empty outside.
    return contains(x, 1e-12) ? 0.0 : std::numeric_limits<double>::infinity();
  };
  A.zero_set = std::move(C);
  return A;
}

MaxMonotoneMap skew_2d() {
  MaxMonotoneMap A;
  A.name = "skew";
  A.dim = 2;
  A.resolvent_fn = [](double gamma, const Point& x) -> Point {
    // (I + gamma S)^{-1} with S = [[0,1],[-1,0]].
    const double det = 1.0 + gamma * gamma;
    Point u(2);
    u[0] = (x[0] - gamma * x[1]) / det;
    u[1] = (gamma * x[0] + x[1]) / det;
    return u;
  };
  A.graph_contains = [](const Point& x, const Point& u, double tol) {
    return std::abs(u[0] - x[1]) <= tol && std::abs(u[1] + x[0]) <= tol;
  };
  A.zero_set = singleton_set(Point::Zero(2));
  A.dist_zero_image = [](const Point& x) { return x.norm(); };
  return A;
}

MaxMonotoneMap elastic(double r, double w, Eigen::Index dim) {
  if (r < 0.0 || w < 0.0) throw config_error("scaled-identity-plus-l1: r and weight must be >= 0");
  MaxMonotoneMap A;
  A.name = "scaled-identity-plus-l1(r=" + std::to_string(r) + ",w=" + std::to_string(w) + ")";
  A.dim = dim;
  A.resolvent_fn = [r, w](double gamma, const Point& x) -> Point {
    Point u(x.size());
    const double t = gamma * w;
    const double denom = 1.0 + gamma * r;
    for (Eigen::Index i = 0; i < x.size(); ++i) u[i] = soft_threshold(x[i], t) / denom;
    return u;
  };
  A.graph_contains = [r, w](const Point& x, const Point& u, double tol) {
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      const double s = u[i] - r * x[i];
      if (x[i] > 0.0) {
        if (std::abs(s - w) > tol) return false;
      } else if (x[i] < 0.0) {
        if (std::abs(s + w) > tol) return false;
      } else {
        if (std::abs(s) > w + tol) return false;
      }
    }
    return true;
  };
  A.zero_set = (r > 0.0 || w > 0.0) ? singleton_set(Point::Zero(dim)) : whole_space(dim);
  A.dist_zero_image = [r, w](const Point& x) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      if (x[i] != 0.0) {
        const double c = r * std::abs(x[i]) + w;
        s += c * c;
      }
    }
    return std::sqrt(s);
  };
  return A;
}

}  // namespace

MaxMonotoneMap catalog_monotone(const json& spec) {
  if (!spec.is_object() || !spec.contains("name") || !spec["name"].is_string()) {
    throw config_error("monotone spec: expected an object with a 'name' string");
  }
  const std::string name = spec["name"].get<std::string>();

  if (name == "scaled-identity" || name == "identity") {
    const double r = spec.contains("r") ? need_number(spec, "r") : 1.0;
    return scaled_identity_monotone(r, need_dim(spec));
  }
  if (name == "l1") {
    return l1_subdifferential(need_number(spec, "weight"), need_dim(spec));
  }
  if (name == "affine-quadratic") {
    return affine_quadratic(need_matrix(spec, "Q"), need_vector(spec, "b"));
  }
  if (name == "normal-cone-box") {
    const Point lo = need_vector(spec, "lower");
    const Point up = need_vector(spec, "upper");
    MaxMonotoneMap A = normal_cone(box_set(lo, up), "normal-cone-box");
    A.graph_contains = [lo, up](const Point& x, const Point& u, double tol) {
      return box_normal_cone_contains(lo, up, x, u, tol);
    };
    return A;
  }
  if (name == "normal-cone-ball") {
    const Point c = need_vector(spec, "center");
    const double radius = need_number(spec, "radius");
    MaxMonotoneMap A = normal_cone(ball_set(c, radius), "normal-cone-ball");
    A.graph_contains = [c, radius](const Point& x, const Point& u, double tol) {
      const Point d = x - c;
      const double n = d.norm();
      if (n > radius + tol) return false;
      if (n < radius - tol) return u.norm() <= tol;
      // On the boundary: u must be a nonnegative multiple of x - c.
      const double along = u.dot(d) / (n * n);
      if (along < -tol) return false;
      return (u - along * d).norm() <= tol;
    };
    return A;
  }
  if (name == "normal-cone-affine") {
    if (!spec.contains("directions") || !spec["directions"].is_array()) {
      throw config_error("normal-cone-affine: missing 'directions' array");
    }
    const Point base = need_vector(spec, "base");
    std::vector<Point> dirs;
    for (const auto& d : spec["directions"]) {
      json wrap{{"d", d}};
      dirs.push_back(need_vector(wrap, "d"));
    }
    SetDescriptor C = affine_subspace(base, dirs);
    auto project = C.project;
    auto contains = C.contains;
    MaxMonotoneMap A = normal_cone(std::move(C), "normal-cone-affine");
    Point origin = base;
    A.graph_contains = [project, contains, origin](const Point& x, const Point& u, double tol) {
      if (!contains(x, tol)) return false;
      // u must be orthogonal to the direction space.
      const Point tangential = project(origin + u) - origin;
      return tangential.norm() <= tol;
    };
    return A;
  }
  if (name == "skew") {
    return skew_2d();
  }
  if (name == "scaled-identity-plus-l1") {
    return elastic(need_number(spec, "r"), need_number(spec, "weight"), need_dim(spec));
  }
  throw config_error("monotone spec: unknown catalog name '" + name + "'");
}

}  // namespace kmlab

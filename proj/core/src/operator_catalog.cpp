#include "kmlab/operator_catalog.hpp"

#include <cmath>
#include <nlohmann/json.hpp>

#include "kmlab/errors.hpp"

namespace kmlab {

namespace {

using nlohmann::json;

double need_number(const json& spec, const char* key) {
  if (!spec.contains(key) || !spec[key].is_number()) {
    throw config_error(std::string("operator spec: missing numeric field '") + key + "'");
  }
  return spec[key].get<double>();
}

Eigen::Index need_dim(const json& spec) {
  if (!spec.contains("dim") || !spec["dim"].is_number_integer() || spec["dim"].get<int>() <= 0) {
    throw config_error("operator spec: missing positive integer field 'dim'");
  }
  return spec["dim"].get<Eigen::Index>();
}

Point need_vector(const json& spec, const char* key) {
  if (!spec.contains(key) || !spec[key].is_array() || spec[key].empty()) {
    throw config_error(std::string("operator spec: missing vector field '") + key + "'");
  }
  Point v(static_cast<Eigen::Index>(spec[key].size()));
  Eigen::Index i = 0;
  for (const auto& c : spec[key]) {
    if (!c.is_number()) throw config_error(std::string("operator spec: non-numeric entry in '") + key + "'");
    v[i++] = c.get<double>();
  }
  return v;
}

AveragedMap scaled_identity(double r, Eigen::Index dim, const std::string& name) {
  AveragedMap T;
  T.name = name;
  T.dim = dim;
  T.alpha = 1.0;
  T.evaluate = [r](const Point& x) -> Point { return r * x; };
  T.fixed_set = (r == 1.0) ? whole_space(dim) : singleton_set(Point::Zero(dim));
  return T;
}

AveragedMap projection_map(SetDescriptor set, const std::string& name) {
  AveragedMap T;
  T.name = name;
  T.dim = set.dim;
  T.alpha = 0.5;
  auto project = set.project;
  T.evaluate = [project](const Point& x) -> Point { return project(x); };
  T.fixed_set = std::move(set);
  return T;
}

}  // namespace

AveragedMap catalog_nonexpansive(const json& spec) {
  if (!spec.is_object() || !spec.contains("name") || !spec["name"].is_string()) {
    throw config_error("operator spec: expected an object with a 'name' string");
  }
  const std::string name = spec["name"].get<std::string>();

  if (name == "identity") {
    return scaled_identity(1.0, need_dim(spec), "identity");
  }
  if (name == "zero" || name == "zero-map") {
    return scaled_identity(0.0, need_dim(spec), "zero-map");
  }
  if (name == "contraction") {
    const double r = need_number(spec, "r");
    if (std::abs(r) > 1.0) throw config_error("contraction: |r| must be <= 1");
    return scaled_identity(r, need_dim(spec), "contraction(r=" + std::to_string(r) + ")");
  }
  if (name == "rotation") {
    const double theta = need_number(spec, "theta");
    AveragedMap T;
    T.name = "rotation(theta=" + std::to_string(theta) + ")";
    T.dim = 2;
    T.alpha = 1.0;
    const double c = std::cos(theta), s = std::sin(theta);
    T.evaluate = [c, s](const Point& x) -> Point {
      Point y(2);
      y[0] = c * x[0] - s * x[1];
      y[1] = s * x[0] + c * x[1];
      return y;
    };
    const bool trivial = std::abs(std::sin(theta / 2.0)) < 1e-15;
    T.fixed_set = trivial ? whole_space(2) : singleton_set(Point::Zero(2));
    return T;
  }
  if (name == "projection-box") {
    return projection_map(box_set(need_vector(spec, "lower"), need_vector(spec, "upper")),
                          "projection-box");
  }
  if (name == "projection-ball") {
    return projection_map(ball_set(need_vector(spec, "center"), need_number(spec, "radius")),
                          "projection-ball");
  }
  if (name == "projection-halfspace") {
    return projection_map(halfspace_set(need_vector(spec, "normal"), need_number(spec, "offset")),
                          "projection-halfspace");
  }
  if (name == "projection-affine") {
    if (!spec.contains("directions") || !spec["directions"].is_array()) {
      throw config_error("projection-affine: missing 'directions' array");
    }
    const Point base = need_vector(spec, "base");
    std::vector<Point> dirs;
    for (const auto& d : spec["directions"]) {
      json wrap{{"d", d}};
      dirs.push_back(need_vector(wrap, "d"));
    }
    return projection_map(affine_subspace(base, dirs), "projection-affine");
  }
  if (name == "convex-combination") {
    const double t = need_number(spec, "t");
    if (!(t > 0.0) || t > 1.0) throw config_error("convex-combination: t must lie in (0,1]");
    if (!spec.contains("inner")) throw config_error("convex-combination: missing 'inner' spec");
    AveragedMap S = catalog_nonexpansive(spec["inner"]);
    AveragedMap T;
    T.name = "convex-combination(t=" + std::to_string(t) + ", " + S.name + ")";
    T.dim = S.dim;
    T.alpha = t * S.alpha;
    T.fixed_set = S.fixed_set;
    auto inner = S.evaluate;
    T.evaluate = [t, inner](const Point& x) -> Point {
      return x + t * (inner(x) - x);
    };
    return T;
  }
  throw config_error("operator spec: unknown catalog name '" + name + "'");
}

}  // namespace kmlab

#include "kmlab/monotone_ops.hpp"

#include <cmath>

#include "kmlab/errors.hpp"

namespace kmlab {

Point resolvent(const MaxMonotoneMap& A, double gamma, const Point& x) {
  if (!(gamma > 0.0) || !std::isfinite(gamma)) {
    throw hypothesis_error("resolvent: gamma must be positive, got " + std::to_string(gamma));
  }
  require_dim(x, A.dim, "resolvent(" + A.name + ")");
  require_finite(x, "resolvent(" + A.name + ")");
  return A.resolvent_fn(gamma, x);
}

Point reflected_resolvent(const MaxMonotoneMap& A, double c, const Point& x) {
  return 2.0 * resolvent(A, c, x) - x;
}

std::pair<Point, Point> graph_element(const MaxMonotoneMap& A, double gamma, const Point& x) {
  Point u = resolvent(A, gamma, x);
  Point v = (x - u) / gamma;
  return {std::move(u), std::move(v)};
}

Certificate resolvent_rescale(const MaxMonotoneMap& A, double gamma, double mu, const Point& x) {
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw hypothesis_error("resolvent_rescale: mu must be positive");
  }
  const Point lhs = resolvent(A, gamma, x);
  const double ratio = mu / gamma;
  const Point rhs = resolvent(A, mu, ratio * x + (1.0 - ratio) * lhs);
  const double discrepancy = (lhs - rhs).norm();

  Certificate cert;
  cert.name = "resolvent-rescale";
  cert.citation = "J_{gamma A}(x) = J_{mu A}((mu/gamma) x + (1 - mu/gamma) J_{gamma A} x)";
  cert.tolerance = 1e-9;
  cert.metrics["discrepancy"] = discrepancy;
  cert.add_slack(-discrepancy, 0);
  cert.finalize();
  return cert;
}

Certificate check_resolvent_firm(const MaxMonotoneMap& A, double gamma, const Point& x, const Point& z) {
  if (!A.zero_set) {
    throw capability_error("check_resolvent_firm: " + A.name + " has no zero-set descriptor");
  }
  if (!A.zero_set->contains(z, 1e-10)) {
    throw precondition_error("check_resolvent_firm: z is not in zer " + A.name);
  }
  const Point jx = resolvent(A, gamma, x);
  const double slack = (x - z).squaredNorm() - (jx - z).squaredNorm() - (x - jx).squaredNorm();

  Certificate cert;
  cert.name = "resolvent-firm";
  cert.citation = "||J_{gamma A} x - z||^2 + ||(Id - J_{gamma A}) x||^2 <= ||x - z||^2 for z in zer A";
  cert.tolerance = 1e-10;
  cert.add_slack(slack, 0);
  cert.finalize();
  return cert;
}

}  // namespace kmlab

#include "kmlab/km_step.hpp"

#include <cmath>

#include "kmlab/errors.hpp"

namespace kmlab {

Point relaxed_from_image(const Point& x, const Point& t, double lambda) {
  return x + lambda * (t - x);
}

Point relaxed_apply(const AveragedMap& T, double lambda, const Point& x) {
  return relaxed_from_image(x, T(x), lambda);
}

std::pair<Point, Point> km_step(const Point& x, const AveragedMap& T,
                                double lambda, double eta, const Point& e) {
  require_dim(x, T.dim, "km_step");
  require_same_dim(x, e, "km_step");
  require_finite(x, "km_step: x");
  require_finite(e, "km_step: e");
  if (!std::isfinite(lambda) || lambda < 0.0) throw input_error("km_step: lambda must be finite and >= 0");
  if (!std::isfinite(eta) || eta < 0.0) throw input_error("km_step: eta must be finite and >= 0");

  Point y = relaxed_apply(T, lambda, x);
  Point z = y + eta * e;
  return {std::move(y), std::move(z)};
}

double relax_constant(double alpha, double lambda) {
  if (!(alpha > 0.0) || alpha > 1.0) throw hypothesis_error("relax_constant: alpha must lie in (0,1]");
  if (!(lambda > 0.0) || lambda > 1.0 / alpha) {
    throw hypothesis_error("relax_constant: lambda must lie in (0, 1/alpha]");
  }
  return lambda * alpha;
}

AveragedMap extract_companion(const AveragedMap& T) {
  if (!(T.alpha > 0.0) || T.alpha > 1.0) throw hypothesis_error("extract_companion: alpha must lie in (0,1]");
  AveragedMap R;
  R.name = T.name + "-companion";
  R.dim = T.dim;
  R.alpha = 1.0;
  R.fixed_set = T.fixed_set;
  const double inv_alpha = 1.0 / T.alpha;
  AveragedMap inner = T;
  R.evaluate = [inner, inv_alpha](const Point& x) -> Point {
    return x + inv_alpha * (inner.evaluate(x) - x);
  };
  return R;
}

}  // namespace kmlab

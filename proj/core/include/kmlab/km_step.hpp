#ifndef KMLAB_KM_STEP_HPP
#define KMLAB_KM_STEP_HPP

#include <utility>

#include "kmlab/averaged_map.hpp"
#include "kmlab/point.hpp"

namespace kmlab {

/// y = x + lambda * (T(x) - x).  Every engine steps through this helper so
/// that exact and translated runs share one floating-point evaluation order.
Point relaxed_apply(const AveragedMap& T, double lambda, const Point& x);

/// Same, reusing an already computed image t = T(x).
Point relaxed_from_image(const Point& x, const Point& t, double lambda);

/// One relaxed step with additive error:
///   y = (1-lambda) x + lambda T(x),  z = y + eta * e.
/// Returns (y, z).
std::pair<Point, Point> km_step(const Point& x, const AveragedMap& T,
                                double lambda, double eta, const Point& e);

/// Averagedness constant of the relaxed map (1-lambda) Id + lambda T when T
/// is alpha-averaged: lambda * alpha.  Requires 0 < lambda <= 1/alpha.
double relax_constant(double alpha, double lambda);

/// The nonexpansive companion R with T - Id = alpha (R - Id):
///   R(x) = x + (1/alpha) (T(x) - x),  Fix R = Fix T, declared alpha = 1.
AveragedMap extract_companion(const AveragedMap& T);

}  // namespace kmlab

#endif

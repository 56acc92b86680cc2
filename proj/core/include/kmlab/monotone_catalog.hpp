#ifndef KMLAB_MONOTONE_CATALOG_HPP
#define KMLAB_MONOTONE_CATALOG_HPP

#include <nlohmann/json_fwd.hpp>

#include "kmlab/monotone_map.hpp"

namespace kmlab {

/// Builds a catalog maximally monotone operator from a structured spec.
///
/// Recognized names:
///   scaled-identity          {r, dim}            A = r Id, r >= 0
///   l1                       {weight, dim}       A = d(w ||.||_1)
///   affine-quadratic         {Q, b}              A x = Qx + b, Q symmetric PSD
///   normal-cone-box          {lower, upper}
///   normal-cone-ball         {center, radius}
///   normal-cone-affine       {base, directions}
///   skew                     {}                  (x,y) -> (y,-x) on R^2
///   scaled-identity-plus-l1  {r, weight, dim}
///
/// Every entry has a closed-form resolvent.  graph_contains and the
/// zero-set descriptor are attached where representable; the affine-quadratic
/// zero set is omitted when Qx = -b is inconsistent.
MaxMonotoneMap catalog_monotone(const nlohmann::json& spec);

/// Scalar soft-threshold: the proximal map of t |.| at x.
double soft_threshold(double x, double t);

}  // namespace kmlab

#endif

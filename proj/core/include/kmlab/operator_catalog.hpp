#ifndef KMLAB_OPERATOR_CATALOG_HPP
#define KMLAB_OPERATOR_CATALOG_HPP

#include <nlohmann/json_fwd.hpp>

#include "kmlab/averaged_map.hpp"

namespace kmlab {

/// Builds a catalog nonexpansive map from a structured spec record.
///
/// Recognized names (all records carry "name"):
///   identity               {dim}
///   zero                   {dim}
///   contraction            {r, dim}           |r| <= 1
///   rotation               {theta}            planar, dim 2
///   projection-box         {lower, upper}
///   projection-ball        {center, radius}
///   projection-halfspace   {normal, offset}
///   projection-affine      {base, directions}
///   convex-combination     {t, inner}         (1-t) Id + t S, S a catalog spec
///
/// Declared alpha: projections 1/2, rotations and other isometries 1,
/// convex combinations t * alpha(S).  The fixed set is attached wherever it
/// is known in closed form.  Unknown names throw config_error.
AveragedMap catalog_nonexpansive(const nlohmann::json& spec);

}  // namespace kmlab

#endif

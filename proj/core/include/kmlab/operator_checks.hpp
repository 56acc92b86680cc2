#ifndef KMLAB_OPERATOR_CHECKS_HPP
#define KMLAB_OPERATOR_CHECKS_HPP

#include "kmlab/averaged_map.hpp"
#include "kmlab/certificate.hpp"

namespace kmlab {

/// Evaluates the three inequality families of one relaxed step with error.
/// With y = (1-lambda) x + lambda T x and z = y + eta e, for xbar in Fix T:
///   (a)  ||y - xbar||^2 <= ||x - xbar||^2 - lambda (1/alpha - lambda) ||x - Tx||^2
///   (b)  ||z - xbar||^2 <= (a-RHS) + eta ||e|| (2 ||y - xbar|| + eta ||e||)
///   (c)  for lambda in [0, 1/alpha]:
///          ||y - xbar|| <= ||x - xbar||,
///          ||z - xbar|| <= ||y - xbar|| + eta ||e||,
///          ||T y - y||  <= ||T x - x||.
/// (c) is skipped (recorded in metrics) when lambda > 1/alpha.
/// Precondition: xbar is fixed under T within 1e-10.
Certificate check_relaxed_inequalities(const Point& x, const AveragedMap& T,
                                       double lambda, double eta, const Point& e,
                                       const Point& xbar);

}  // namespace kmlab

#endif

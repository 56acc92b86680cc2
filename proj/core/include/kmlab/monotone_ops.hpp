#ifndef KMLAB_MONOTONE_OPS_HPP
#define KMLAB_MONOTONE_OPS_HPP

#include <utility>

#include "kmlab/certificate.hpp"
#include "kmlab/monotone_map.hpp"

namespace kmlab {

/// J_{gamma A}(x); validates gamma > 0, dimension, finiteness.
Point resolvent(const MaxMonotoneMap& A, double gamma, const Point& x);

/// 2 J_{cA} - Id; nonexpansive.
Point reflected_resolvent(const MaxMonotoneMap& A, double c, const Point& x);

/// The graph element (J_{gamma A} x, (x - J_{gamma A} x) / gamma) of A.
std::pair<Point, Point> graph_element(const MaxMonotoneMap& A, double gamma, const Point& x);

/// Checks the resolvent rescale identity
///   J_{gamma A}(x) = J_{mu A}( (mu/gamma) x + (1 - mu/gamma) J_{gamma A} x )
/// and records the discrepancy norm; passes iff it is <= 1e-9.
Certificate resolvent_rescale(const MaxMonotoneMap& A, double gamma, double mu, const Point& x);

/// Checks the firm-nonexpansiveness inequality at a zero z of A:
///   ||J_{gamma A} x - z||^2 + ||(Id - J_{gamma A}) x||^2 <= ||x - z||^2.
/// Precondition: z in zer A (checked through the zero-set descriptor).
Certificate check_resolvent_firm(const MaxMonotoneMap& A, double gamma, const Point& x, const Point& z);

}  // namespace kmlab

#endif

#pragma once

#include <utility>

#include "halfspace/geometry.hpp"
#include "halfspace/medium.hpp"

namespace halfspace {

// Closed-form point-source field of the two-layer transmission problem
//
//     div(a(x) grad u) = -delta(x - y),   a = a+ above the plane x3 = 0,
//                                         a = a- below,
//
// with u and a * du/dN continuous across the plane. The solution is the
// free-space kernel plus a single image charge of strength b mirrored
// through the interface:
//
//     u = (1 / 4 pi a+) [ 1/r + b/R ]   for y3 > 0,
//     u = (1 / 4 pi a-) [ 1/r - b/R ]   for y3 < 0,
//
// r = |x - y|, R the mirror distance, b = (a+ - a-)/(a+ + a-). A source on
// the plane itself radiates symmetrically with the averaged coefficient:
// u = 1 / (2 pi r (a+ + a-)).

/// Field value u(x, y) of a unit point source at y, observed at x.
/// Strictly positive; throws SingularEvaluation when x == y.
double green_value(const LayeredMedium& medium, const Point3& x, const Point3& y);

/// Limit of u(x, (y_hat, y3)) as y3 -> 0 from either side:
/// 1 / (2 pi r (a+ + a-)) with r the distance from x to the interface point.
double interface_trace(const LayeredMedium& medium, const Point3& x,
                       double y_hat1, double y_hat2);

/// Gradient of u with respect to x. The normal component jumps across the
/// interface, so x3 == 0 throws AmbiguousSide; use green_gradient_one_sided
/// to pick a side explicitly.
Vec3 green_gradient(const LayeredMedium& medium, const Point3& x, const Point3& y);

/// One-sided gradient limit at x, approaching from the given side.
/// For x3 != 0 the side must match sign(x3). `side` must not be OnInterface.
Vec3 green_gradient_one_sided(const LayeredMedium& medium, const Point3& x,
                              const Point3& y, Side side);

/// lim_{x -> y} u(x, y) |x - y|: the strength of the 1/r singularity.
/// Equals 1/(4 pi a+) above the interface, 1/(4 pi a-) below, and
/// 1/(2 pi (a+ + a-)) for a source exactly on it.
double singular_coefficient(const LayeredMedium& medium, const Point3& y);

} // namespace halfspace

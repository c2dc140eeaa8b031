#pragma once

#include <functional>

#include "halfspace/geometry.hpp"
#include "halfspace/medium.hpp"

namespace halfspace {

// The point-source equation in weak form: for every smooth compactly
// supported phi,  integral a(x) grad u . grad phi dx = phi(y). Checking
// this identity with the analytic gradient ties the closed form to the
// equation itself rather than to any particular solver.

/// Smooth test field with compact support, given by value/gradient handles
/// and the bounding box of its support.
struct TestField {
    std::function<double(const Point3&)> value;
    std::function<Vec3(const Point3&)> gradient;
    Point3 support_lo;
    Point3 support_hi;
};

/// The standard bump exp(1 - 1/(1 - |x-c|^2/s^2)) on the ball |x-c| < s,
/// identically zero outside; value 1 at the center.
TestField bump_field(const Point3& center, double radius);

struct WeakIdentityResult {
    double integral = 0.0;       // integral a grad u . grad phi
    double phi_at_source = 0.0;  // what it should equal
    std::size_t cells = 0;
};

/// Midpoint quadrature of a grad u . grad phi over [box_lo, box_hi] with
/// cells_per_axis cells per axis. The partition is split at the interface
/// plane and at the source coordinates, so no cell straddles either the
/// coefficient jump or the singular point. phi's support must lie strictly
/// inside the box.
WeakIdentityResult weak_identity_check(const LayeredMedium& medium, const Point3& y,
                                       const TestField& phi, const Point3& box_lo,
                                       const Point3& box_hi, int cells_per_axis);

} // namespace halfspace

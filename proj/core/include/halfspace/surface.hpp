#pragma once

#include <array>
#include <functional>

#include "halfspace/geometry.hpp"
#include "halfspace/grid.hpp"
#include "halfspace/medium.hpp"

namespace halfspace {

// Near a smooth curved discontinuity surface the field of a nearby source
// is, to leading order, the flat-interface field written in the tangent
// frame at the closest surface point ("frozen" coefficients). This header
// provides the frames and the frozen evaluation; experiments.hpp measures
// how good the approximation is.

/// A smooth surface given as the graph x3 = phi(x1, x2), with its gradient
/// (and optionally Hessian, for curvature bookkeeping) supplied as handles.
struct SurfaceGraph {
    std::function<double(double, double)> height;
    std::function<std::array<double, 2>(double, double)> gradient;
    std::function<std::array<double, 3>(double, double)> hessian; // phi11, phi12, phi22

    bool above(const Point3& p) const { return p.x3 > height(p.x1, p.x2); }
};

SurfaceGraph flat_surface();
/// Rotationally symmetric paraboloid (x1^2 + x2^2) / (2 curvature_radius);
/// both principal curvature radii at the apex equal curvature_radius.
SurfaceGraph paraboloid_surface(double curvature_radius);

/// Orthonormal tangent-plane frame at a surface point. The third axis is
/// the unit normal on the positive-phi side; t1 follows the projection of
/// the world x1 axis and t2 = normal x t1.
struct LocalFrame {
    Point3 origin;
    Vec3 t1, t2, normal;

    Point3 to_local(const Point3& world) const {
        const Vec3 d = world - origin;
        return {dot(d, t1), dot(d, t2), dot(d, normal)};
    }
    Point3 to_world(const Point3& local) const {
        return origin + t1 * local.x1 + t2 * local.x2 + normal * local.x3;
    }
};

LocalFrame frame_at(const SurfaceGraph& surface, double s1, double s2);

/// Leading-order field near the surface point the frame was built at:
/// map both points into the frame and evaluate the flat-interface formula.
/// Points farther than neighborhood_radius from the frame origin are
/// rejected; nothing is claimed about the approximation out there.
double frozen_green(const LayeredMedium& medium, const LocalFrame& frame,
                    const Point3& x, const Point3& y, double neighborhood_radius);

/// Material sampler for a curved two-layer medium: a_plus strictly above
/// the surface, a_minus strictly below, harmonic mean on it.
CoefficientSampler curved_coefficient(const LayeredMedium& medium,
                                      const SurfaceGraph& surface);

} // namespace halfspace

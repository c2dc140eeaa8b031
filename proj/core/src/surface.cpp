#include "halfspace/surface.hpp"

#include <cmath>

#include "halfspace/green.hpp"

namespace halfspace {

SurfaceGraph flat_surface() {
    SurfaceGraph s;
    s.height = [](double, double) { return 0.0; };
    s.gradient = [](double, double) { return std::array<double, 2>{0.0, 0.0}; };
    s.hessian = [](double, double) { return std::array<double, 3>{0.0, 0.0, 0.0}; };
    return s;
}

SurfaceGraph paraboloid_surface(double curvature_radius) {
    const double inv = 1.0 / curvature_radius;
    SurfaceGraph s;
    s.height = [inv](double u, double v) { return 0.5 * inv * (u * u + v * v); };
    s.gradient = [inv](double u, double v) {
        return std::array<double, 2>{inv * u, inv * v};
    };
    s.hessian = [inv](double, double) { return std::array<double, 3>{inv, 0.0, inv}; };
    return s;
}

LocalFrame frame_at(const SurfaceGraph& surface, double s1, double s2) {
    LocalFrame f;
    f.origin = {s1, s2, surface.height(s1, s2)};

    const auto g = surface.gradient(s1, s2);
    f.normal = normalized({-g[0], -g[1], 1.0});

    // Gram-Schmidt of the world x1 axis against the normal; a graph normal
    // always has a positive x3 component, so this never degenerates.
    const Vec3 e1{1.0, 0.0, 0.0};
    f.t1 = normalized(e1 - f.normal * dot(e1, f.normal));
    f.t2 = cross(f.normal, f.t1);
    return f;
}

double frozen_green(const LayeredMedium& medium, const LocalFrame& frame,
                    const Point3& x, const Point3& y, double neighborhood_radius) {
    if (norm(x - frame.origin) > neighborhood_radius ||
        norm(y - frame.origin) > neighborhood_radius)
        throw std::domain_error(
            "frozen_green: point outside the declared frozen-coefficient neighborhood");
    return green_value(medium, frame.to_local(x), frame.to_local(y));
}

CoefficientSampler curved_coefficient(const LayeredMedium& medium,
                                      const SurfaceGraph& surface) {
    const double ap = medium.a_plus();
    const double am = medium.a_minus();
    const double on_surface = 2.0 * ap * am / (ap + am);
    const auto height = surface.height;
    return [=](const Point3& p) {
        const double z = height(p.x1, p.x2);
        if (p.x3 > z) return ap;
        if (p.x3 < z) return am;
        return on_surface;
    };
}

} // namespace halfspace

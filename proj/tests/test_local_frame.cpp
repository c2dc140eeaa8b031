#include <doctest.h>

#include <cmath>

#include "halfspace/experiments.hpp"
#include "halfspace/green.hpp"
#include "halfspace/surface.hpp"
#include "test_support.hpp"

using namespace halfspace;
using halfspace::testsupport::PointSampler;
using halfspace::testsupport::rel_diff;

namespace {

// Rotation by angle around a unit axis (Rodrigues), test-side only.
Vec3 rotate(const Vec3& v, const Vec3& axis, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    return v * c + cross(axis, v) * s + axis * (dot(axis, v) * (1.0 - c));
}

Point3 rotate(const Point3& p, const Vec3& axis, double angle) {
    const Vec3 r = rotate(Vec3{p.x1, p.x2, p.x3}, axis, angle);
    return {r.x1, r.x2, r.x3};
}

} // namespace

TEST_SUITE_BEGIN("local_frame");

TEST_CASE("frames at distinguished points") {
    // Flat surface: identity frame.
    const LocalFrame flat = frame_at(flat_surface(), 0.3, -0.4);
    CHECK(flat.origin.x3 == 0.0);
    CHECK(norm(flat.normal - Vec3{0, 0, 1}) <= 1e-15);
    CHECK(norm(flat.t1 - Vec3{1, 0, 0}) <= 1e-15);
    CHECK(norm(flat.t2 - Vec3{0, 1, 0}) <= 1e-15);

    // Paraboloid apex: the tangent plane is horizontal.
    const LocalFrame apex = frame_at(paraboloid_surface(5.0), 0.0, 0.0);
    CHECK(norm(apex.normal - Vec3{0, 0, 1}) <= 1e-15);

    // Tilted plane x3 = x1: graph normal (-1, 0, 1)/sqrt(2).
    SurfaceGraph plane;
    plane.height = [](double u, double) { return u; };
    plane.gradient = [](double, double) { return std::array<double, 2>{1.0, 0.0}; };
    const LocalFrame tilted = frame_at(plane, 0.0, 0.0);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    CHECK(norm(tilted.normal - Vec3{-inv_sqrt2, 0, inv_sqrt2}) <= 1e-14);
    CHECK(norm(tilted.t2 - Vec3{0, 1, 0}) <= 1e-14);
}

TEST_CASE("frames are orthonormal and their maps are inverse isometries") {
    PointSampler gen(111);
    const SurfaceGraph surf = paraboloid_surface(3.0);
    for (int i = 0; i < 50; ++i) {
        const LocalFrame f = frame_at(surf, gen.uniform(-2, 2), gen.uniform(-2, 2));
        CHECK(std::abs(norm(f.t1) - 1.0) <= 1e-12);
        CHECK(std::abs(norm(f.t2) - 1.0) <= 1e-12);
        CHECK(std::abs(norm(f.normal) - 1.0) <= 1e-12);
        CHECK(std::abs(dot(f.t1, f.t2)) <= 1e-12);
        CHECK(std::abs(dot(f.t1, f.normal)) <= 1e-12);
        CHECK(std::abs(dot(f.t2, f.normal)) <= 1e-12);

        const Point3 p = gen.point(), q = gen.point();
        // Round trip and distance preservation (r, rho, R all derive from it).
        CHECK(norm(f.to_world(f.to_local(p)) - p) <= 1e-13);
        CHECK(std::abs(norm(f.to_local(p) - f.to_local(q)) - norm(p - q)) <= 1e-12);
    }
}

TEST_CASE("frozen field over a flat surface is the plain closed form") {
    const LayeredMedium m(2, 1);
    const LocalFrame f = frame_at(flat_surface(), 0.0, 0.0);
    PointSampler gen(222);
    for (int i = 0; i < 50; ++i) {
        const Point3 x = gen.off_interface_point(0.8, 0.05);
        const Point3 y = gen.off_interface_point(0.8, 0.05);
        if (distance(x, y) < 0.02) continue;
        CHECK(rel_diff(frozen_green(m, f, x, y, 10.0), green_value(m, x, y)) <= 1e-14);
    }
}

TEST_CASE("rotating world and frame together changes nothing") {
    const LayeredMedium m(2, 1);
    const LocalFrame f = frame_at(paraboloid_surface(4.0), 0.5, -0.3);
    const Vec3 axis = normalized({0.3, -0.5, 0.8});
    const double angle = 0.77;

    LocalFrame g;
    g.origin = rotate(f.origin, axis, angle);
    g.t1 = rotate(f.t1, axis, angle);
    g.t2 = rotate(f.t2, axis, angle);
    g.normal = rotate(f.normal, axis, angle);

    PointSampler gen(333);
    for (int i = 0; i < 30; ++i) {
        const Point3 x = f.origin + Vec3{gen.uniform(-0.3, 0.3), gen.uniform(-0.3, 0.3),
                                         gen.uniform(0.05, 0.4)};
        const Point3 y = f.origin + Vec3{gen.uniform(-0.3, 0.3), gen.uniform(-0.3, 0.3),
                                         gen.uniform(-0.4, -0.05)};
        const double u = frozen_green(m, f, x, y, 5.0);
        const double u_rot =
            frozen_green(m, g, rotate(x, axis, angle), rotate(y, axis, angle), 5.0);
        CHECK(rel_diff(u, u_rot) <= 1e-12);
    }
}

TEST_CASE("points outside the declared neighborhood are rejected") {
    const LayeredMedium m(2, 1);
    const LocalFrame f = frame_at(paraboloid_surface(5.0), 0.0, 0.0);
    CHECK_THROWS_AS(frozen_green(m, f, {3, 0, 0.1}, {0, 0, 0.1}, 1.0), std::domain_error);
}

TEST_CASE("frozen form matches an FD solve of the curved problem") {
    // Curvature radius 5, evaluation distance 0.05 from the surface point.
    const LayeredMedium m(2, 1);
    FrozenExperimentConfig cfg;
    cfg.grid_n = 65;
    const auto rows =
        asymptotic_error_experiment(m, paraboloid_surface(5.0), 0.0, 0.0, {0.05}, cfg);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].rel_error <= 0.05);
}

TEST_CASE("mirrored geometry with swapped media gives identical errors") {
    // Reflecting the surface through the interface plane and swapping the
    // two half-spaces is the same physical problem upside down. Since the
    // experiment always shoots its source ray upward, the mirrored run is
    // the original with source and probe exchanged; the continuum fields
    // agree by reciprocity, and the discrete ones to discretization level
    // (the boundary data's harmonic extension is not exactly reciprocal).
    FrozenExperimentConfig cfg;
    cfg.grid_n = 65;
    const auto original = asymptotic_error_experiment(
        LayeredMedium(2, 1), paraboloid_surface(5.0), 0, 0, {0.1}, cfg);
    const auto mirrored = asymptotic_error_experiment(
        LayeredMedium(1, 2), paraboloid_surface(-5.0), 0, 0, {0.1}, cfg);
    REQUIRE(original.size() == 1);
    REQUIRE(mirrored.size() == 1);
    CHECK(rel_diff(original[0].rel_error, mirrored[0].rel_error) <= 0.02);
    CHECK(rel_diff(original[0].fd_value, mirrored[0].fd_value) <= 0.002);
}

TEST_CASE("experiment input validation") {
    const LayeredMedium m(2, 1);
    FrozenExperimentConfig cfg;
    cfg.grid_n = 65;
    CHECK_THROWS_AS(
        asymptotic_error_experiment(m, flat_surface(), 0, 0, {0.1, 0.2}, cfg),
        std::invalid_argument); // increasing scales
    cfg.grid_n = 33;            // too coarse: probe distance falls below 4h
    CHECK_THROWS_AS(
        asymptotic_error_experiment(m, flat_surface(), 0, 0, {0.2, 0.1}, cfg),
        std::invalid_argument);
}

TEST_SUITE_END();

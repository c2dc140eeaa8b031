#include <doctest.h>

#include <cmath>

#include "halfspace/weak_form.hpp"
#include "test_support.hpp"

using namespace halfspace;

TEST_SUITE_BEGIN("weak_identity");

TEST_CASE("bump test function basics") {
    const TestField phi = bump_field({0, 0, 0.5}, 1.0);
    CHECK(phi.value({0, 0, 0.5}) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(phi.value({0, 0, 1.6}) == 0.0);
    CHECK(phi.value({5, 0, 0}) == 0.0);
    const Vec3 g = phi.gradient({0.3, 0.0, 0.5});
    CHECK(g.x1 < 0.0); // points back toward the center
    CHECK(g.x2 == 0.0);
    CHECK(g.x3 == 0.0);

    // Gradient handle vs central differences of the value handle.
    const Point3 p{0.2, -0.3, 0.8};
    const double s = 1e-6;
    CHECK(g.x1 != 0.0);
    const Vec3 gp = phi.gradient(p);
    CHECK(gp.x1 == doctest::Approx((phi.value({p.x1 + s, p.x2, p.x3}) -
                                    phi.value({p.x1 - s, p.x2, p.x3})) / (2 * s))
                       .epsilon(1e-6));
    CHECK(gp.x3 == doctest::Approx((phi.value({p.x1, p.x2, p.x3 + s}) -
                                    phi.value({p.x1, p.x2, p.x3 - s})) / (2 * s))
                       .epsilon(1e-6));
}

TEST_CASE("test function with phi(y) = 0 integrates to ~0") {
    const LayeredMedium m(2, 1);
    const Point3 y{0, 0, 1};
    const TestField phi = bump_field({2.0, 0.0, 0.5}, 0.8);
    CHECK(phi.value(y) == 0.0);
    const auto r = weak_identity_check(m, y, phi, {1.0, -1.0, -0.5}, {3.0, 1.0, 1.5}, 48);
    CHECK(std::abs(r.integral) <= 1e-4);
}

TEST_CASE("homogeneous medium: classical Green identity") {
    const LayeredMedium m(1, 1);
    const Point3 y{0, 0, 1};
    const TestField phi = bump_field(y, 0.8);
    const auto r =
        weak_identity_check(m, y, phi, {-0.9, -0.9, 0.1}, {0.9, 0.9, 1.9}, 64);
    CHECK(r.phi_at_source == doctest::Approx(1.0));
    CHECK(std::abs(r.integral - r.phi_at_source) / r.phi_at_source <= 1e-3);
}

TEST_CASE("bump straddling the interface") {
    const LayeredMedium m(2, 1);
    const Point3 y{0, 0, 0.5};
    const TestField phi = bump_field(y, 1.0);

    double prev_err = 1e30;
    for (int cells : {16, 32, 64}) {
        const auto r =
            weak_identity_check(m, y, phi, {-1.1, -1.1, -0.6}, {1.1, 1.1, 1.6}, cells);
        const double err = std::abs(r.integral - r.phi_at_source) / r.phi_at_source;
        CHECK(err < prev_err); // refinement helps monotonically
        prev_err = err;
    }
    CHECK(prev_err <= 1e-3);
}

TEST_CASE("clipped support is rejected") {
    const LayeredMedium m(2, 1);
    const TestField phi = bump_field({0, 0, 0.5}, 1.0);
    CHECK_THROWS_AS(
        weak_identity_check(m, {0, 0, 0.5}, phi, {-1.0, -1.0, -0.4}, {1.0, 1.0, 1.6}, 16),
        std::invalid_argument);
}

TEST_SUITE_END();

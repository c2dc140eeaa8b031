#include "halfspace/green.hpp"

#include <cmath>
#include <numbers>

namespace halfspace {

namespace {

constexpr double four_pi = 4.0 * std::numbers::pi;
constexpr double two_pi = 2.0 * std::numbers::pi;

double checked_distance(const Point3& x, const Point3& y, const char* who) {
    const double r = distance(x, y);
    if (r == 0.0)
        throw SingularEvaluation(std::string(who) + ": x == y is a singular evaluation");
    return r;
}

} // namespace

double green_value(const LayeredMedium& medium, const Point3& x, const Point3& y) {
    const double r = checked_distance(x, y, "green_value");

    // Source on the interface: both one-sided limits agree on this value.
    if (y.x3 == 0.0)
        return 1.0 / (two_pi * r * (medium.a_plus() + medium.a_minus()));

    const double R = mirror_distance(x, y);
    const double b = contrast(medium);
    if (y.x3 > 0.0)
        return (1.0 / r + b / R) / (four_pi * medium.a_plus());
    return (1.0 / r - b / R) / (four_pi * medium.a_minus());
}

double interface_trace(const LayeredMedium& medium, const Point3& x,
                       double y_hat1, double y_hat2) {
    const Point3 y{y_hat1, y_hat2, 0.0};
    const double r = checked_distance(x, y, "interface_trace");
    return 1.0 / (two_pi * r * (medium.a_plus() + medium.a_minus()));
}

Vec3 green_gradient_one_sided(const LayeredMedium& medium, const Point3& x,
                              const Point3& y, Side side) {
    if (side == Side::OnInterface)
        throw AmbiguousSide("green_gradient_one_sided: side must be Plus or Minus");
    if (x.x3 > 0.0 && side != Side::Plus)
        throw AmbiguousSide("green_gradient_one_sided: side does not match sign(x3)");
    if (x.x3 < 0.0 && side != Side::Minus)
        throw AmbiguousSide("green_gradient_one_sided: side does not match sign(x3)");

    const double r = checked_distance(x, y, "green_gradient");
    const Vec3 d = x - y;
    const double inv_r3 = 1.0 / (r * r * r);

    // Radially symmetric field for the on-interface source.
    if (y.x3 == 0.0)
        return d * (-inv_r3 / (two_pi * (medium.a_plus() + medium.a_minus())));

    const double R = mirror_distance(x, y);
    const double inv_R3 = 1.0 / (R * R * R);
    const double sgn = (side == Side::Plus) ? 1.0 : -1.0;
    // Gradient of 1/R; note d|x3|/dx3 = sign(x3) off the interface.
    const Vec3 gR{-d.x1 * inv_R3, -d.x2 * inv_R3,
                  -sgn * (std::abs(x.x3) + std::abs(y.x3)) * inv_R3};

    const double b = contrast(medium);
    if (y.x3 > 0.0)
        return (d * (-inv_r3) + b * gR) * (1.0 / (four_pi * medium.a_plus()));
    return (d * (-inv_r3) - b * gR) * (1.0 / (four_pi * medium.a_minus()));
}

Vec3 green_gradient(const LayeredMedium& medium, const Point3& x, const Point3& y) {
    const Side s = side_of(x);
    if (s == Side::OnInterface)
        throw AmbiguousSide(
            "green_gradient: x lies on the interface; use green_gradient_one_sided");
    return green_gradient_one_sided(medium, x, y, s);
}

double singular_coefficient(const LayeredMedium& medium, const Point3& y) {
    switch (side_of(y)) {
        case Side::Plus:  return 1.0 / (four_pi * medium.a_plus());
        case Side::Minus: return 1.0 / (four_pi * medium.a_minus());
        default:          return 1.0 / (two_pi * (medium.a_plus() + medium.a_minus()));
    }
}

} // namespace halfspace

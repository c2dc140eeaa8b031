#pragma once

#include <cmath>

#include "halfspace/errors.hpp"

namespace halfspace {

/// A point in R^3. The material interface is the plane x3 = 0.
struct Point3 {
    double x1 = 0.0;
    double x2 = 0.0;
    double x3 = 0.0;
};

/// A displacement / gradient vector.
struct Vec3 {
    double x1 = 0.0;
    double x2 = 0.0;
    double x3 = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x1 + o.x1, x2 + o.x2, x3 + o.x3}; }
    Vec3 operator-(const Vec3& o) const { return {x1 - o.x1, x2 - o.x2, x3 - o.x3}; }
    Vec3 operator*(double s) const { return {x1 * s, x2 * s, x3 * s}; }
    Vec3 operator-() const { return {-x1, -x2, -x3}; }
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline Vec3 operator-(const Point3& a, const Point3& b) {
    return {a.x1 - b.x1, a.x2 - b.x2, a.x3 - b.x3};
}

inline Point3 operator+(const Point3& p, const Vec3& v) {
    return {p.x1 + v.x1, p.x2 + v.x2, p.x3 + v.x3};
}

inline double dot(const Vec3& a, const Vec3& b) {
    return a.x1 * b.x1 + a.x2 * b.x2 + a.x3 * b.x3;
}

inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.x2 * b.x3 - a.x3 * b.x2,
            a.x3 * b.x1 - a.x1 * b.x3,
            a.x1 * b.x2 - a.x2 * b.x1};
}

inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

inline Vec3 normalized(const Vec3& v) {
    const double n = norm(v);
    return {v.x1 / n, v.x2 / n, v.x3 / n};
}

/// Which side of the interface plane a point sits on.
enum class Side { Plus, Minus, OnInterface };

inline Side side_of(double x3) {
    if (x3 > 0.0) return Side::Plus;
    if (x3 < 0.0) return Side::Minus;
    return Side::OnInterface;
}

inline Side side_of(const Point3& p) { return side_of(p.x3); }

/// Euclidean distance r = |x - y|.
inline double distance(const Point3& x, const Point3& y) {
    return norm(x - y);
}

/// Horizontal distance rho between x and y (projection onto the interface plane).
inline double horizontal_distance(const Point3& x, const Point3& y) {
    return std::hypot(x.x1 - y.x1, x.x2 - y.x2);
}

/// Distance from x to the image of y mirrored through the interface plane:
/// R = sqrt(rho^2 + (|x3| + |y3|)^2).
///
/// R >= r always, with equality iff x3 and y3 have opposite signs or one of
/// them is zero. Throws if x and y coincide on the interface (R would be 0).
inline double mirror_distance(const Point3& x, const Point3& y) {
    const double rho = horizontal_distance(x, y);
    const double h = std::abs(x.x3) + std::abs(y.x3);
    if (rho == 0.0 && h == 0.0)
        throw SingularEvaluation("mirror_distance: x and y coincide on the interface");
    return std::hypot(rho, h);
}

} // namespace halfspace

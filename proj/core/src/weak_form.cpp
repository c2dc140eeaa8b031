#include "halfspace/weak_form.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "halfspace/green.hpp"

namespace halfspace {

TestField bump_field(const Point3& center, double radius) {
    const double s2 = radius * radius;
    TestField f;
    f.value = [center, s2](const Point3& p) {
        const Vec3 d = p - center;
        const double t = dot(d, d) / s2;
        if (t >= 1.0) return 0.0;
        return std::exp(1.0 - 1.0 / (1.0 - t));
    };
    f.gradient = [center, s2](const Point3& p) -> Vec3 {
        const Vec3 d = p - center;
        const double t = dot(d, d) / s2;
        if (t >= 1.0) return {0.0, 0.0, 0.0};
        const double one_mt = 1.0 - t;
        const double phi = std::exp(1.0 - 1.0 / one_mt);
        return d * (-2.0 * phi / (s2 * one_mt * one_mt));
    };
    f.support_lo = {center.x1 - radius, center.x2 - radius, center.x3 - radius};
    f.support_hi = {center.x1 + radius, center.x2 + radius, center.x3 + radius};
    return f;
}

namespace {

std::vector<double> axis_breaks(double lo, double hi, int cells,
                                std::initializer_list<double> extra) {
    std::vector<double> b;
    b.reserve(cells + 3);
    for (int i = 0; i <= cells; ++i)
        b.push_back(lo + (hi - lo) * i / cells);
    for (double e : extra)
        if (e > lo && e < hi) b.push_back(e);
    std::sort(b.begin(), b.end());
    b.erase(std::unique(b.begin(), b.end()), b.end());
    return b;
}

} // namespace

WeakIdentityResult weak_identity_check(const LayeredMedium& medium, const Point3& y,
                                       const TestField& phi, const Point3& box_lo,
                                       const Point3& box_hi, int cells_per_axis) {
    if (cells_per_axis < 2)
        throw std::invalid_argument("weak_identity_check: need at least 2 cells per axis");
    const bool inside = phi.support_lo.x1 > box_lo.x1 && phi.support_hi.x1 < box_hi.x1 &&
                        phi.support_lo.x2 > box_lo.x2 && phi.support_hi.x2 < box_hi.x2 &&
                        phi.support_lo.x3 > box_lo.x3 && phi.support_hi.x3 < box_hi.x3;
    if (!inside)
        throw std::invalid_argument(
            "weak_identity_check: test-function support is clipped by the quadrature box");

    // Breakpoints keep the interface plane on cell boundaries and the source
    // on cell corners, so midpoints never land on either.
    const auto bx = axis_breaks(box_lo.x1, box_hi.x1, cells_per_axis, {y.x1});
    const auto by = axis_breaks(box_lo.x2, box_hi.x2, cells_per_axis, {y.x2});
    const auto bz = axis_breaks(box_lo.x3, box_hi.x3, cells_per_axis, {0.0, y.x3});

    WeakIdentityResult out;
    out.phi_at_source = phi.value(y);

    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < bx.size(); ++i) {
        const double mx = 0.5 * (bx[i] + bx[i + 1]);
        const double wx = bx[i + 1] - bx[i];
        for (std::size_t j = 0; j + 1 < by.size(); ++j) {
            const double my = 0.5 * (by[j] + by[j + 1]);
            const double wy = by[j + 1] - by[j];
            for (std::size_t k = 0; k + 1 < bz.size(); ++k) {
                const Point3 m{mx, my, 0.5 * (bz[k] + bz[k + 1])};
                const Vec3 gphi = phi.gradient(m);
                if (gphi.x1 == 0.0 && gphi.x2 == 0.0 && gphi.x3 == 0.0) continue;
                const double a = m.x3 > 0.0 ? medium.a_plus() : medium.a_minus();
                const double vol = wx * wy * (bz[k + 1] - bz[k]);
                sum += a * dot(green_gradient(medium, m, y), gphi) * vol;
                ++out.cells;
            }
        }
    }
    out.integral = sum;
    return out;
}

} // namespace halfspace

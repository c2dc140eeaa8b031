#include "halfspace/grid.hpp"

namespace halfspace {

CoefficientSampler flat_coefficient(const LayeredMedium& medium) {
    const double ap = medium.a_plus();
    const double am = medium.a_minus();
    const double on_plane = 2.0 * ap * am / (ap + am);
    return [ap, am, on_plane](const Point3& p) {
        if (p.x3 > 0.0) return ap;
        if (p.x3 < 0.0) return am;
        return on_plane;
    };
}

CoefficientField CoefficientField::build(const BoxGrid& grid,
                                         const CoefficientSampler& sampler) {
    CoefficientField f;
    const int n = grid.n;
    f.n = n;
    f.ax.resize(static_cast<std::size_t>(n - 1) * n * n);
    f.ay.resize(static_cast<std::size_t>(n) * (n - 1) * n);
    f.az.resize(static_cast<std::size_t>(n) * n * (n - 1));

    const double h = grid.spacing();
    const auto face = [&](const Point3& from, const Vec3& dir) {
        const double a1 = sampler(from + dir * (0.25 * h));
        const double a2 = sampler(from + dir * (0.75 * h));
        return 2.0 * a1 * a2 / (a1 + a2);
    };

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const Point3 p = grid.node(i, j, k);
                if (i < n - 1) f.ax[f.fx(i, j, k)] = face(p, {1.0, 0.0, 0.0});
                if (j < n - 1) f.ay[f.fy(i, j, k)] = face(p, {0.0, 1.0, 0.0});
                if (k < n - 1) f.az[f.fz(i, j, k)] = face(p, {0.0, 0.0, 1.0});
            }
    return f;
}

} // namespace halfspace

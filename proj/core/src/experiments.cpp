#include "halfspace/experiments.hpp"

#include <cmath>
#include <stdexcept>

#include "halfspace/green.hpp"

namespace halfspace {

std::vector<ScaleErrorRow> asymptotic_error_experiment(
    const LayeredMedium& medium, const SurfaceGraph& surface, double s1, double s2,
    const std::vector<double>& scales, const FrozenExperimentConfig& config) {
    if (scales.empty())
        throw std::invalid_argument("asymptotic_error_experiment: no scales given");
    for (std::size_t i = 1; i < scales.size(); ++i)
        if (!(scales[i] < scales[i - 1]))
            throw std::invalid_argument(
                "asymptotic_error_experiment: scales must be strictly decreasing");
    // h = 2 box_scale d / (n - 1); the probe distance d must stay >= 4h.
    if (static_cast<double>(config.grid_n - 1) < 8.0 * config.box_scale)
        throw std::invalid_argument(
            "asymptotic_error_experiment: grid too coarse, scales fall below 4 spacings");

    const LocalFrame frame = frame_at(surface, s1, s2);

    std::vector<ScaleErrorRow> rows;
    rows.reserve(scales.size());
    for (double d : scales) {
        if (d > config.neighborhood_radius)
            throw std::invalid_argument(
                "asymptotic_error_experiment: scale exceeds the frozen neighborhood");
        const BoxGrid grid(config.box_scale * d, config.grid_n);

        // Source a distance d along the normal, probe mirrored below, both
        // snapped to grid nodes.
        const Point3 y_raw = frame.to_world({0.0, 0.0, d});
        const Point3 x_raw = frame.to_world({0.0, 0.0, -d});
        const Point3 ys = grid.node(grid.nearest(y_raw.x1), grid.nearest(y_raw.x2),
                                    grid.nearest(y_raw.x3));
        const int xi = grid.nearest(x_raw.x1), xj = grid.nearest(x_raw.x2),
                  xk = grid.nearest(x_raw.x3);
        const Point3 xs = grid.node(xi, xj, xk);

        const auto dirichlet = [&](const Point3& p) {
            return green_value(medium, frame.to_local(p), frame.to_local(ys));
        };
        const FdSystem sys =
            build_system(curved_coefficient(medium, surface), grid, ys, dirichlet);
        auto [field, report] = solve_system(sys, config.cg_tol);
        // Solver trouble is reported per row, not thrown.

        ScaleErrorRow row;
        row.scale = d;
        row.fd_value = field.at(xi, xj, xk);
        row.frozen_value = frozen_green(medium, frame, xs, ys, config.neighborhood_radius);
        row.rel_error = std::abs(row.fd_value - row.frozen_value) / std::abs(row.fd_value);
        row.solve = report;
        rows.push_back(row);
    }
    return rows;
}

void ProbeConfig::validate() const {
    if (!(region.lo.x1 < region.hi.x1 && region.lo.x2 < region.hi.x2 &&
          region.lo.x3 < region.hi.x3))
        throw std::invalid_argument("ProbeConfig: degenerate region");
    if (region.hi.x3 > 0.0)
        throw std::invalid_argument("ProbeConfig: region must lie below the interface");
    if (s.x3 != 0.0)
        throw std::invalid_argument("ProbeConfig: s must lie on the interface");
    if (cells_per_axis < 4)
        throw std::invalid_argument("ProbeConfig: need at least 4 cells per axis");
    for (std::size_t i = 1; i < distances.size(); ++i)
        if (!(distances[i] < distances[i - 1]))
            throw std::invalid_argument("ProbeConfig: distances must be strictly decreasing");
    for (double d : distances)
        if (!(d > 0.0))
            throw std::invalid_argument("ProbeConfig: distances must be positive");
}

namespace {

/// Midpoint quadrature of f over the probe region with one extra refinement
/// level for cells that come within 2d of the probe point.
template <typename F>
double integrate_region(const ProbeConfig& config, const Point3& probe, double d,
                        const F& f) {
    const int m = config.cells_per_axis;
    const Vec3 ext = config.region.hi - config.region.lo;
    const double hx = ext.x1 / m, hy = ext.x2 / m, hz = ext.x3 / m;

    const auto cell_distance = [&](const Point3& lo, const Point3& hi) {
        const double dx = std::max({lo.x1 - probe.x1, probe.x1 - hi.x1, 0.0});
        const double dy = std::max({lo.x2 - probe.x2, probe.x2 - hi.x2, 0.0});
        const double dz = std::max({lo.x3 - probe.x3, probe.x3 - hi.x3, 0.0});
        return std::sqrt(dx * dx + dy * dy + dz * dz);
    };

    double sum = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k) {
                const Point3 lo{config.region.lo.x1 + i * hx, config.region.lo.x2 + j * hy,
                                config.region.lo.x3 + k * hz};
                const Point3 hi{lo.x1 + hx, lo.x2 + hy, lo.x3 + hz};
                if (cell_distance(lo, hi) < 2.0 * d) {
                    // Split 2x per axis; the dominant near-probe contribution
                    // gets the finer sampling.
                    for (int a = 0; a < 2; ++a)
                        for (int b = 0; b < 2; ++b)
                            for (int c = 0; c < 2; ++c) {
                                const Point3 mid{lo.x1 + (2 * a + 1) * hx / 4.0,
                                                 lo.x2 + (2 * b + 1) * hy / 4.0,
                                                 lo.x3 + (2 * c + 1) * hz / 4.0};
                                sum += f(mid) * (hx * hy * hz / 8.0);
                            }
                } else {
                    const Point3 mid{0.5 * (lo.x1 + hi.x1), 0.5 * (lo.x2 + hi.x2),
                                     0.5 * (lo.x3 + hi.x3)};
                    sum += f(mid) * (hx * hy * hz);
                }
            }
    return sum;
}

Point3 probe_point(const ProbeConfig& config, double d) {
    if (!(d > 0.0))
        throw std::invalid_argument("orthogonality_integral: probe height must be positive");
    const Point3 y{config.s.x1, config.s.x2, d};
    const bool in_region = y.x1 >= config.region.lo.x1 && y.x1 <= config.region.hi.x1 &&
                           y.x2 >= config.region.lo.x2 && y.x2 <= config.region.hi.x2 &&
                           y.x3 >= config.region.lo.x3 && y.x3 <= config.region.hi.x3;
    if (in_region)
        throw std::invalid_argument("orthogonality_integral: probe lies inside the region");
    return y;
}

} // namespace

double orthogonality_integral(const LayeredMedium& medium1, const LayeredMedium& medium2,
                              const ProbeConfig& config, double d) {
    config.validate();
    const Point3 y = probe_point(config, d);
    if (config.v == 0.0) return 0.0;

    const auto integrand = [&](const Point3& x) {
        return config.v *
               dot(green_gradient(medium1, x, y), green_gradient(medium2, x, y));
    };
    return integrate_region(config, y, d, integrand);
}

double singular_kernel_integral(const ProbeConfig& config, double d) {
    config.validate();
    const Point3 y = probe_point(config, d);
    const auto integrand = [&](const Point3& x) {
        const double r2 = dot(x - y, x - y);
        return 1.0 / (r2 * r2);
    };
    return integrate_region(config, y, d, integrand);
}

LogLogFit fit_log_log_slope(const std::vector<std::pair<double, double>>& samples) {
    if (samples.size() < 2)
        throw std::invalid_argument("fit_log_log_slope: need at least 2 samples");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double n = static_cast<double>(samples.size());
    for (const auto& [d, I] : samples) {
        if (!(d > 0.0) || I == 0.0)
            throw std::invalid_argument("fit_log_log_slope: samples must be nonzero");
        const double lx = std::log(d), ly = std::log(std::abs(I));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    LogLogFit fit;
    fit.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss = 0.0;
    for (const auto& [d, I] : samples) {
        const double r = std::log(std::abs(I)) - (fit.intercept + fit.slope * std::log(d));
        ss += r * r;
    }
    fit.rms_residual = std::sqrt(ss / n);
    return fit;
}

BlowupReport blowup_exponent(const LayeredMedium& medium1, const LayeredMedium& medium2,
                             const ProbeConfig& config) {
    config.validate();
    if (config.distances.size() < 3)
        throw std::invalid_argument("blowup_exponent: need at least 3 probe distances");

    BlowupReport report;
    if (config.v == 0.0) {
        report.trivial_zero = true;
        for (double d : config.distances) report.samples.emplace_back(d, 0.0);
        return report;
    }

    for (double d : config.distances) {
        const double I = orthogonality_integral(medium1, medium2, config, d);
        report.samples.emplace_back(d, I);
        if (I == 0.0 || std::signbit(I) != std::signbit(config.v))
            report.consistent = false;
    }
    if (report.consistent) report.fit = fit_log_log_slope(report.samples);
    return report;
}

} // namespace halfspace

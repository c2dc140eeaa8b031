#include "halfspace/fd_solver.hpp"

#include <cmath>

#include "halfspace/green.hpp"

namespace halfspace {

void FdSystem::apply(const std::vector<double>& u, std::vector<double>& out) const {
    const int n = grid.n;
    const double inv_h2 = 1.0 / (grid.spacing() * grid.spacing());
    out.assign(u.size(), 0.0);

    for (int i = 1; i < n - 1; ++i)
        for (int j = 1; j < n - 1; ++j) {
            const std::size_t row = grid.index(i, j, 0);
            const std::size_t sx = grid.index(1, 0, 0) - grid.index(0, 0, 0);
            const std::size_t sy = grid.index(0, 1, 0) - grid.index(0, 0, 0);
            for (int k = 1; k < n - 1; ++k) {
                const std::size_t c = row + k;
                const double axm = faces.ax[faces.fx(i - 1, j, k)];
                const double axp = faces.ax[faces.fx(i, j, k)];
                const double aym = faces.ay[faces.fy(i, j - 1, k)];
                const double ayp = faces.ay[faces.fy(i, j, k)];
                const double azm = faces.az[faces.fz(i, j, k - 1)];
                const double azp = faces.az[faces.fz(i, j, k)];
                const double diag = axm + axp + aym + ayp + azm + azp;
                out[c] = inv_h2 * (diag * u[c] - axm * u[c - sx] - axp * u[c + sx] -
                                   aym * u[c - sy] - ayp * u[c + sy] - azm * u[c - 1] -
                                   azp * u[c + 1]);
            }
        }
}

FdSystem::StencilRow FdSystem::stencil_row(int i, int j, int k) const {
    const double inv_h2 = 1.0 / (grid.spacing() * grid.spacing());
    const double axm = faces.ax[faces.fx(i - 1, j, k)];
    const double axp = faces.ax[faces.fx(i, j, k)];
    const double aym = faces.ay[faces.fy(i, j - 1, k)];
    const double ayp = faces.ay[faces.fy(i, j, k)];
    const double azm = faces.az[faces.fz(i, j, k - 1)];
    const double azp = faces.az[faces.fz(i, j, k)];
    StencilRow r{};
    r.center = (axm + axp + aym + ayp + azm + azp) * inv_h2;
    r.neighbor = {-axm * inv_h2, -axp * inv_h2, -aym * inv_h2,
                  -ayp * inv_h2, -azm * inv_h2, -azp * inv_h2};
    return r;
}

FdSystem build_system(CoefficientField faces, const BoxGrid& grid,
                      const Point3& y, const BoundaryValues& dirichlet) {
    if (!grid.contains(y))
        throw std::invalid_argument("build_system: source must lie strictly inside the box");
    if (y.x3 == 0.0)
        throw std::invalid_argument("build_system: source must be off the interface plane");

    FdSystem sys{grid, std::move(faces), {}, {}};
    const int n = grid.n;
    const double h = grid.spacing();

    sys.rhs.assign(grid.node_count(), 0.0);
    sys.boundary.assign(grid.node_count(), 0.0);

    sys.source_i = grid.nearest(y.x1);
    sys.source_j = grid.nearest(y.x2);
    sys.source_k = grid.nearest(y.x3);
    sys.rhs[grid.index(sys.source_i, sys.source_j, sys.source_k)] = 1.0 / (h * h * h);

    if (dirichlet) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k)
                    if (grid.is_boundary(i, j, k))
                        sys.boundary[grid.index(i, j, k)] = dirichlet(grid.node(i, j, k));
    }

    // Fold the Dirichlet data into the right-hand side of the interior rows.
    const double inv_h2 = 1.0 / (h * h);
    const auto fold = [&](int i, int j, int k, int bi, int bj, int bk, double a) {
        sys.rhs[grid.index(i, j, k)] += inv_h2 * a * sys.boundary[grid.index(bi, bj, bk)];
    };
    if (dirichlet) {
        for (int i = 1; i < n - 1; ++i)
            for (int j = 1; j < n - 1; ++j)
                for (int k = 1; k < n - 1; ++k) {
                    if (i == 1) fold(i, j, k, 0, j, k, sys.faces.ax[sys.faces.fx(0, j, k)]);
                    if (i == n - 2)
                        fold(i, j, k, n - 1, j, k, sys.faces.ax[sys.faces.fx(n - 2, j, k)]);
                    if (j == 1) fold(i, j, k, i, 0, k, sys.faces.ay[sys.faces.fy(i, 0, k)]);
                    if (j == n - 2)
                        fold(i, j, k, i, n - 1, k, sys.faces.ay[sys.faces.fy(i, n - 2, k)]);
                    if (k == 1) fold(i, j, k, i, j, 0, sys.faces.az[sys.faces.fz(i, j, 0)]);
                    if (k == n - 2)
                        fold(i, j, k, i, j, n - 1, sys.faces.az[sys.faces.fz(i, j, n - 2)]);
                }
    }
    return sys;
}

FdSystem build_system(const CoefficientSampler& sampler, const BoxGrid& grid,
                      const Point3& y, const BoundaryValues& dirichlet) {
    return build_system(CoefficientField::build(grid, sampler), grid, y, dirichlet);
}

FdSystem build_system(const LayeredMedium& medium, const BoxGrid& grid, const Point3& y,
                      const BoundaryValues& dirichlet) {
    return build_system(flat_coefficient(medium), grid, y, dirichlet);
}

namespace {

double interior_dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

} // namespace

std::pair<GridField, SolveReport> solve_system(const FdSystem& system, double tol,
                                               int max_iterations,
                                               const IterateCallback& callback) {
    const BoxGrid& grid = system.grid;
    SolveReport report;
    GridField field(grid);

    std::vector<double> u(grid.node_count(), 0.0);
    std::vector<double> r = system.rhs;
    std::vector<double> p = r;
    std::vector<double> q(grid.node_count(), 0.0);

    const double rhs_norm = std::sqrt(interior_dot(system.rhs, system.rhs));
    if (rhs_norm == 0.0) {
        // Zero load and the boundary is already satisfied by construction.
        report.converged = true;
        for (std::size_t i = 0; i < u.size(); ++i) field.values[i] = system.boundary[i];
        return {field, report};
    }

    if (max_iterations <= 0) max_iterations = 20 * grid.n;

    double rr = interior_dot(r, r);
    int iter = 0;
    while (iter < max_iterations && std::sqrt(rr) > tol * rhs_norm) {
        ++iter;
        system.apply(p, q);
        const double alpha = rr / interior_dot(p, q);
        for (std::size_t i = 0; i < u.size(); ++i) u[i] += alpha * p[i];
        for (std::size_t i = 0; i < u.size(); ++i) r[i] -= alpha * q[i];
        const double rr_new = interior_dot(r, r);
        const double beta = rr_new / rr;
        rr = rr_new;
        for (std::size_t i = 0; i < u.size(); ++i) p[i] = r[i] + beta * p[i];
        if (callback) callback(iter, u);
    }

    report.iterations = iter;
    report.final_residual = std::sqrt(rr) / rhs_norm;
    report.converged = report.final_residual <= tol;

    for (std::size_t i = 0; i < u.size(); ++i) field.values[i] = u[i] + system.boundary[i];
    return {field, report};
}

SolveReport compare_to_closed_form(const LayeredMedium& medium, const BoxGrid& grid,
                                   const Point3& y, double tol) {
    // Snap the source to its node up front so the discrete delta, the
    // boundary data, and the reference all describe the same problem.
    const Point3 ys = grid.node(grid.nearest(y.x1), grid.nearest(y.x2), grid.nearest(y.x3));
    const auto dirichlet = [&](const Point3& p) { return green_value(medium, p, ys); };
    const FdSystem sys = build_system(medium, grid, ys, dirichlet);
    auto [field, report] = solve_system(sys, tol);
    // A failed solve still yields a comparable field; the report's converged
    // flag carries the non-convergence to the caller.

    const double h = grid.spacing();
    const Point3 src = grid.node(sys.source_i, sys.source_j, sys.source_k);
    report.excluded_radius = 4.0 * h;

    double num = 0.0, den = 0.0, max_rel = 0.0;
    const int n = grid.n;
    for (int i = 1; i < n - 1; ++i)
        for (int j = 1; j < n - 1; ++j)
            for (int k = 1; k < n - 1; ++k) {
                const Point3 p = grid.node(i, j, k);
                if (distance(p, src) <= report.excluded_radius) continue;
                const double exact = green_value(medium, p, ys);
                const double diff = field.at(i, j, k) - exact;
                num += diff * diff;
                den += exact * exact;
                max_rel = std::max(max_rel, std::abs(diff) / exact);
            }
    report.rel_l2_error = std::sqrt(num / den);
    report.max_rel_error = max_rel;
    return report;
}

} // namespace halfspace

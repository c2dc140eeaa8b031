// Command-line front end: closed-form evaluation, the verification battery,
// both numerical oracles, and the two experiments, all emitting
// machine-readable JSON or CSV. Exit codes: 0 success, 1 check failure,
// 2 invalid input, 3 non-convergence.

#include <CLI11.hpp>

#include <cmath>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "halfspace/experiments.hpp"
#include "halfspace/fd_solver.hpp"
#include "halfspace/green.hpp"
#include "halfspace/grid_io.hpp"
#include "halfspace/spectral.hpp"
#include "halfspace/surface.hpp"
#include "cli_util.hpp"

using namespace halfspace;
using namespace halfspace::cli;

namespace {

constexpr int kSchemaVersion = 1;
constexpr unsigned kDefaultSeed = 20240817u;

Json medium_json(const LayeredMedium& m) {
    Json j;
    j["a_plus"] = m.a_plus();
    j["a_minus"] = m.a_minus();
    j["contrast"] = contrast(m);
    return j;
}

Json header_json(const char* command, const LayeredMedium& m) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["command"] = command;
    j["medium"] = medium_json(m);
    return j;
}

// ---------------------------------------------------------------------------
// eval / trace
// ---------------------------------------------------------------------------

struct EvalPair {
    Point3 x, y;
};

int run_eval(const LayeredMedium& m, const std::vector<EvalPair>& pairs,
             const std::string& side, const std::string& format,
             const std::string& output) {
    Json doc = header_json("eval", m);
    Json results = Json::array();
    std::string csv = "x1,x2,x3,y1,y2,y3,u,du_dx1,du_dx2,du_dx3\n";

    for (const auto& [x, y] : pairs) {
        const double u = green_value(m, x, y);
        bool have_grad = true;
        Vec3 g{};
        if (x.x3 != 0.0) {
            g = green_gradient(m, x, y);
        } else if (side == "plus") {
            g = green_gradient_one_sided(m, x, y, Side::Plus);
        } else if (side == "minus") {
            g = green_gradient_one_sided(m, x, y, Side::Minus);
        } else {
            have_grad = false; // on the interface with no side chosen
        }

        Json r;
        r["x"] = point_json(x);
        r["y"] = point_json(y);
        r["u"] = u;
        if (have_grad)
            r["grad_u"] = vec_json(g);
        else
            r["grad_u"] = nullptr;
        results.push_back(std::move(r));

        csv += format_double(x.x1) + ',' + format_double(x.x2) + ',' +
               format_double(x.x3) + ',' + format_double(y.x1) + ',' +
               format_double(y.x2) + ',' + format_double(y.x3) + ',' + format_double(u);
        if (have_grad)
            csv += ',' + format_double(g.x1) + ',' + format_double(g.x2) + ',' +
                   format_double(g.x3);
        else
            csv += ",,,";
        csv += '\n';
    }
    doc["results"] = std::move(results);

    if (format == "csv")
        emit_text(csv, output);
    else
        emit_json(doc, output);
    return kExitOk;
}

int run_trace(const LayeredMedium& m, const Point3& x, double y1, double y2,
              const std::string& format, const std::string& output) {
    const double u = interface_trace(m, x, y1, y2);
    if (format == "csv") {
        emit_text("x1,x2,x3,y1,y2,u\n" + format_double(x.x1) + ',' +
                      format_double(x.x2) + ',' + format_double(x.x3) + ',' +
                      format_double(y1) + ',' + format_double(y2) + ',' +
                      format_double(u) + '\n',
                  output);
    } else {
        Json doc = header_json("trace", m);
        doc["x"] = point_json(x);
        doc["y_hat"] = Json::array({y1, y2});
        doc["u"] = u;
        emit_json(doc, output);
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

struct Check {
    std::string name;
    double metric;
    double threshold;
    bool passed;
};

std::vector<Check> run_verify_checks(const LayeredMedium& m, unsigned seed,
                                     bool inject_fault) {
    std::vector<Check> checks;
    std::mt19937_64 rng(seed);
    auto uni = [&](double lo, double hi) {
        return std::uniform_real_distribution<double>(lo, hi)(rng);
    };
    auto off_point = [&](double span, double clearance) {
        Point3 p{uni(-span, span), uni(-span, span), 0.0};
        const double sgn = uni(-1, 1) >= 0 ? 1.0 : -1.0;
        p.x3 = sgn * uni(clearance, span);
        return p;
    };
    auto push = [&](std::string name, double metric, double threshold) {
        checks.push_back({std::move(name), metric, threshold, metric <= threshold});
    };

    { // Reciprocity of the closed form, cross-side pairs included.
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            Point3 x = off_point(2.0, 0.05), y = off_point(2.0, 0.05);
            if (i % 3 == 0) y.x3 = (x.x3 > 0 ? -1.0 : 1.0) * (std::abs(y.x3) + 0.05);
            if (distance(x, y) < 0.02) continue;
            const double a = green_value(m, x, y), b = green_value(m, y, x);
            worst = std::max(worst, std::abs(a - b) / std::max(a, b));
        }
        push("reciprocity", worst, 1e-13);
    }

    { // Continuity of u across the interface plane.
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            const Point3 y = off_point(1.5, 0.1);
            const double x1 = uni(-2, 2), x2 = uni(-2, 2);
            const double t = interface_trace(m, {x1, x2, 0.0}, y.x1, y.x2);
            const double gap = std::abs(green_value(m, {x1, x2, 1e-9}, y) -
                                        green_value(m, {x1, x2, -1e-9}, y));
            worst = std::max(worst, gap / t);
        }
        push("interface_continuity", worst, 1e-8);
    }

    { // Flux matching with analytic one-sided gradients.
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            const Point3 y = off_point(1.5, 0.1);
            const Point3 x{uni(-2, 2), uni(-2, 2), 0.0};
            const double above =
                m.a_plus() * green_gradient_one_sided(m, x, y, Side::Plus).x3;
            // Fault injection flips the sign of the image term below the
            // interface, which is exactly what a wrong contrast b would do.
            const LayeredMedium below_medium = inject_fault ? m.swapped() : m;
            const double below =
                m.a_minus() *
                green_gradient_one_sided(below_medium, x, y, Side::Minus).x3;
            worst = std::max(worst,
                             std::abs(above - below) / std::max(std::abs(above), 1e-300));
        }
        push("interface_flux", worst, 1e-8);
    }

    { // Two-sided kernel bounds.
        double worst = 0.0;
        for (int i = 0; i < 200; ++i) {
            const Point3 x{uni(-2, 2), uni(-2, 2), uni(-2, 2)};
            const Point3 y = off_point(1.5, 0.05);
            const double r = distance(x, y);
            if (r < 0.02) continue;
            const double u = green_value(m, x, y);
            const double a_side = y.x3 > 0 ? m.a_plus() : m.a_minus();
            const double babs = std::abs(contrast(m));
            const double lo = (1.0 - babs) / (4.0 * std::numbers::pi * a_side * r);
            const double hi = (1.0 + babs) / (4.0 * std::numbers::pi * a_side * r);
            worst = std::max({worst, (lo - u) / u, (u - hi) / u});
        }
        push("kernel_bounds", worst, 1e-13);
    }

    { // Discrete harmonicity: 7-point Laplacian shrinks ~4x when h halves.
        const Point3 y{0, 0, 1};
        double worst = 0.0;
        const auto lap = [&](const Point3& x, double h) {
            double s = -6.0 * green_value(m, x, y);
            s += green_value(m, {x.x1 + h, x.x2, x.x3}, y);
            s += green_value(m, {x.x1 - h, x.x2, x.x3}, y);
            s += green_value(m, {x.x1, x.x2 + h, x.x3}, y);
            s += green_value(m, {x.x1, x.x2 - h, x.x3}, y);
            s += green_value(m, {x.x1, x.x2, x.x3 + h}, y);
            s += green_value(m, {x.x1, x.x2, x.x3 - h}, y);
            return s / (h * h);
        };
        for (const Point3 x : {Point3{0.6, 0.2, 0.4}, Point3{0.3, -0.5, -0.6}}) {
            const double ratio = lap(x, 0.02) / lap(x, 0.01);
            worst = std::max(worst, std::abs(ratio - 4.0));
        }
        push("harmonicity_order", worst, 1.0);
    }

    { // Trace consistency.
        double worst = 0.0;
        for (int i = 0; i < 50; ++i) {
            const Point3 x = off_point(1.5, 0.1);
            const double y1 = uni(-1, 1), y2 = uni(-1, 1);
            const double t = interface_trace(m, x, y1, y2);
            worst = std::max(worst,
                             std::abs(green_value(m, x, {y1, y2, 1e-7}) - t) / t);
        }
        push("trace_consistency", worst, 1e-5);
    }

    { // The transformed profile solves its ODE problem.
        double worst = 0.0;
        for (int i = 0; i < 20; ++i) {
            const double nu = uni(0.5, 4.0);
            const double y3 = (uni(-1, 1) >= 0 ? 1.0 : -1.0) * uni(0.3, 2.0);
            const LayeredMedium mm(uni(0.5, 4.0), uni(0.5, 4.0));
            worst = std::max(worst, verify_profile_ode(mm, nu, y3).max_residual());
        }
        push("profile_ode", worst, 1e-6);
    }

    { // Quadrature self-test against the closed Laplace transform of J0.
        QuadratureSpec spec;
        spec.abs_tol = 1e-10;
        spec.rel_tol = 1e-10;
        double worst = 0.0;
        for (double rho : {0.0, 0.5, 1.0, 3.0})
            for (double t : {0.5, 1.0, 4.0}) {
                const auto c = laplace_hankel_check(rho, t, spec);
                worst = std::max(worst, std::abs(c.numeric - c.closed_form));
            }
        push("laplace_hankel", worst, 1e-8);
    }

    { // Spectral reconstruction against the closed form.
        QuadratureSpec spec;
        spec.abs_tol = 1e-13;
        spec.rel_tol = 1e-10;
        double worst = 0.0;
        int done = 0;
        while (done < 20) {
            const Point3 x = off_point(2.0, 0.06), y = off_point(2.0, 0.06);
            if (distance(x, y) < 0.05) continue;
            if (std::abs(x.x3 - y.x3) < 0.05) continue;
            const auto inv = hankel_invert(m, x, y, spec);
            if (!inv.converged) continue;
            worst = std::max(worst, std::abs(inv.value - green_value(m, x, y)) /
                                        green_value(m, x, y));
            ++done;
        }
        push("spectral_agreement", worst, 1e-6);
    }

    return checks;
}

int run_verify(const LayeredMedium& m, unsigned seed, bool inject_fault,
               const std::string& format, const std::string& output) {
    const auto checks = run_verify_checks(m, seed, inject_fault);

    bool all = true;
    Json doc = header_json("verify", m);
    doc["seed"] = seed;
    doc["inject_fault"] = inject_fault;
    Json arr = Json::array();
    std::string csv = "check,metric,threshold,passed\n";
    for (const auto& c : checks) {
        all = all && c.passed;
        Json j;
        j["name"] = c.name;
        j["metric"] = c.metric;
        j["threshold"] = c.threshold;
        j["passed"] = c.passed;
        arr.push_back(std::move(j));
        csv += c.name + ',' + format_double(c.metric) + ',' +
               format_double(c.threshold) + ',' + (c.passed ? "true" : "false") + '\n';
    }
    doc["checks"] = std::move(arr);
    doc["all_passed"] = all;

    if (format == "csv")
        emit_text(csv, output);
    else
        emit_json(doc, output);
    return all ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------------------
// oracle-compare
// ---------------------------------------------------------------------------

int run_oracle_compare(const LayeredMedium& m, bool spectral, bool fd, int pairs,
                       double tol, const std::vector<int>& grid_ns, double box_l,
                       const Point3& y, double fd_tol, double cg_tol, double nu_max,
                       unsigned seed, const std::string& format,
                       const std::string& output) {
    Json doc = header_json("oracle-compare", m);
    std::string csv = "route,n,pairs,max_rel_error,mean_rel_error,rel_l2_error,"
                      "iterations\n";
    bool failed = false;
    bool nonconverged = false;

    if (spectral) {
        std::mt19937_64 rng(seed);
        auto uni = [&](double lo, double hi) {
            return std::uniform_real_distribution<double>(lo, hi)(rng);
        };
        QuadratureSpec spec;
        spec.abs_tol = 1e-13;
        spec.rel_tol = 1e-10;
        spec.nu_max = nu_max;

        double worst = 0.0, sum = 0.0;
        int done = 0, not_converged = 0;
        while (done < pairs) {
            Point3 x{uni(-2, 2), uni(-2, 2), uni(-2, 2)};
            Point3 yy{uni(-2, 2), uni(-2, 2), uni(-2, 2)};
            if (std::abs(x.x3) + std::abs(yy.x3) < 0.1) continue;
            if (std::abs(yy.x3) < 0.05) continue;
            if (distance(x, yy) < 0.05) continue;
            if (std::abs(x.x3 - yy.x3) < 0.05) continue;
            if (horizontal_distance(x, yy) > 10.0) continue;
            const auto inv = hankel_invert(m, x, yy, spec);
            ++done;
            if (!inv.converged) {
                ++not_converged;
                continue;
            }
            const double err =
                std::abs(inv.value - green_value(m, x, yy)) / green_value(m, x, yy);
            worst = std::max(worst, err);
            sum += err;
        }
        Json s;
        s["pairs"] = done;
        s["not_converged"] = not_converged;
        s["max_rel_error"] = worst;
        s["mean_rel_error"] = sum / std::max(1, done - not_converged);
        s["tolerance"] = tol;
        s["passed"] = not_converged == 0 && worst <= tol;
        doc["spectral"] = std::move(s);
        failed = failed || !(not_converged == 0 && worst <= tol);
        nonconverged = nonconverged || not_converged > 0;
        csv += "spectral,," + std::to_string(done) + ',' + format_double(worst) + ',' +
               format_double(sum / std::max(1, done - not_converged)) + ",,\n";
    }

    if (fd) {
        Json rows = Json::array();
        double prev = -1.0;
        bool decreasing = true;
        for (int n : grid_ns) {
            const SolveReport r = compare_to_closed_form(m, BoxGrid(box_l, n), y, cg_tol);
            Json row;
            row["n"] = n;
            row["rel_l2_error"] = r.rel_l2_error;
            row["max_rel_error"] = r.max_rel_error;
            row["iterations"] = r.iterations;
            row["final_residual"] = r.final_residual;
            row["excluded_radius"] = r.excluded_radius;
            rows.push_back(std::move(row));
            csv += "fd," + std::to_string(n) + ",,," + ',' +
                   format_double(r.rel_l2_error) + ',' + std::to_string(r.iterations) +
                   '\n';
            if (prev >= 0.0 && r.rel_l2_error >= prev) decreasing = false;
            prev = r.rel_l2_error;
            nonconverged = nonconverged || !r.converged;
        }
        Json f;
        f["grids"] = std::move(rows);
        f["source"] = point_json(y);
        f["box_half_width"] = box_l;
        f["tolerance"] = fd_tol;
        f["error_decreases"] = decreasing;
        f["passed"] = decreasing && prev <= fd_tol;
        failed = failed || !(decreasing && prev <= fd_tol);
        doc["fd"] = std::move(f);
    }

    if (format == "csv")
        emit_text(csv, output);
    else
        emit_json(doc, output);
    if (nonconverged) return kExitNonConvergence;
    return failed ? kExitCheckFailed : kExitOk;
}

// ---------------------------------------------------------------------------
// experiments
// ---------------------------------------------------------------------------

int run_curved(const LayeredMedium& m, double radius, const std::vector<double>& scales,
               const FrozenExperimentConfig& cfg, const std::string& format,
               const std::string& output) {
    const auto curved =
        asymptotic_error_experiment(m, paraboloid_surface(radius), 0, 0, scales, cfg);
    const auto flat = asymptotic_error_experiment(m, flat_surface(), 0, 0, scales, cfg);

    Json doc = header_json("experiments", m);
    doc["experiment"] = "curved";
    doc["curvature_radius"] = radius;
    doc["box_scale"] = cfg.box_scale;
    doc["grid_n"] = cfg.grid_n;

    std::string csv = "surface,scale,rel_error,fd_value,frozen_value,iterations\n";
    const auto rows_json = [&csv](const char* tag,
                                  const std::vector<ScaleErrorRow>& rows) {
        Json arr = Json::array();
        for (const auto& r : rows) {
            Json j;
            j["scale"] = r.scale;
            j["rel_error"] = r.rel_error;
            j["fd_value"] = r.fd_value;
            j["frozen_value"] = r.frozen_value;
            j["iterations"] = r.solve.iterations;
            j["final_residual"] = r.solve.final_residual;
            arr.push_back(std::move(j));
            csv += std::string(tag) + ',' + format_double(r.scale) + ',' +
                   format_double(r.rel_error) + ',' + format_double(r.fd_value) + ',' +
                   format_double(r.frozen_value) + ',' +
                   std::to_string(r.solve.iterations) + '\n';
        }
        return arr;
    };
    doc["curved_rows"] = rows_json("curved", curved);
    doc["flat_rows"] = rows_json("flat", flat);

    bool decreasing = true;
    for (std::size_t i = 1; i < curved.size(); ++i)
        decreasing = decreasing && curved[i].rel_error < curved[i - 1].rel_error;
    doc["error_strictly_decreasing"] = decreasing;

    bool converged = true;
    for (const auto& r : curved) converged = converged && r.solve.converged;
    for (const auto& r : flat) converged = converged && r.solve.converged;

    if (format == "csv")
        emit_text(csv, output);
    else
        emit_json(doc, output);
    return converged ? kExitOk : kExitNonConvergence;
}

int run_blowup(const LayeredMedium& m1, const LayeredMedium& m2, ProbeConfig cfg,
               const std::string& format, const std::string& output) {
    const BlowupReport rep = blowup_exponent(m1, m2, cfg);

    Json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["command"] = "experiments";
    doc["experiment"] = "blowup";
    doc["medium1"] = medium_json(m1);
    doc["medium2"] = medium_json(m2);
    doc["v"] = cfg.v;
    doc["cells_per_axis"] = cfg.cells_per_axis;
    doc["region_lo"] = point_json(cfg.region.lo);
    doc["region_hi"] = point_json(cfg.region.hi);

    std::string csv = "d,integral\n";
    Json samples = Json::array();
    for (const auto& [d, I] : rep.samples) {
        samples.push_back(Json::array({d, I}));
        csv += format_double(d) + ',' + format_double(I) + '\n';
    }
    doc["samples"] = std::move(samples);
    doc["trivial_zero"] = rep.trivial_zero;
    doc["consistent"] = rep.consistent;
    if (!rep.trivial_zero && rep.consistent) {
        Json fit;
        fit["exponent"] = rep.fit.slope;
        fit["intercept"] = rep.fit.intercept;
        fit["rms_residual"] = rep.fit.rms_residual;
        doc["fit"] = std::move(fit);
    } else {
        doc["fit"] = nullptr;
    }

    if (format == "csv")
        emit_text(csv, output);
    else
        emit_json(doc, output);
    return rep.trivial_zero || rep.consistent ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------------------
// export-grid
// ---------------------------------------------------------------------------

int run_export_grid(const LayeredMedium& m, int n, double box_l, const Point3& y,
                    const std::string& source, const std::string& bc, double cg_tol,
                    const std::string& format, const std::string& output) {
    const BoxGrid grid(box_l, n);
    const Point3 ys =
        grid.node(grid.nearest(y.x1), grid.nearest(y.x2), grid.nearest(y.x3));

    GridField field(grid);
    if (source == "closed") {
        for (int i = 0; i < grid.n; ++i)
            for (int j = 0; j < grid.n; ++j)
                for (int k = 0; k < grid.n; ++k) {
                    const Point3 p = grid.node(i, j, k);
                    // The source node itself is singular; store 0 there.
                    field.at(i, j, k) = distance(p, ys) == 0.0 ? 0.0
                                                               : green_value(m, p, ys);
                }
    } else {
        const BoundaryValues dirichlet =
            bc == "zero" ? BoundaryValues(nullptr) : BoundaryValues([&](const Point3& p) {
                return green_value(m, p, ys);
            });
        const FdSystem sys = build_system(m, grid, ys, dirichlet);
        auto [solved, report] = solve_system(sys, cg_tol);
        if (!report.converged)
            throw NonConvergence("export-grid: CG did not converge",
                                 report.final_residual);
        field = std::move(solved);
    }

    if (format == "csv") {
        if (output.empty()) throw std::invalid_argument("export-grid requires --output");
        write_grid_csv(field, output);
    } else {
        if (output.empty()) throw std::invalid_argument("export-grid requires --output");
        write_grid_binary(field, output);
    }
    return kExitOk;
}

template <typename T>
void config_override(const Json& cfg, const char* key, const CLI::Option* opt,
                     T& target) {
    if (opt->count() == 0 && cfg.contains(key)) target = cfg.at(key).get<T>();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Point-source fields in a two-layer medium: closed form, spectral "
                 "and finite-difference oracles, and the near-interface experiments"};
    app.require_subcommand(1);

    // Shared options (registered per subcommand so help stays local).
    struct Common {
        double a_plus = 2.0, a_minus = 1.0;
        std::string output, format = "json", config;
        unsigned seed = kDefaultSeed;
    };
    const auto add_common = [](CLI::App* cmd, Common& c) {
        cmd->add_option("--a-plus", c.a_plus, "coefficient for x3 > 0");
        cmd->add_option("--a-minus", c.a_minus, "coefficient for x3 < 0");
        cmd->add_option("--output", c.output, "write the artifact here (default stdout)");
        cmd->add_option("--format", c.format, "json | csv")
            ->check(CLI::IsMember({"json", "csv"}));
        cmd->add_option("--config", c.config, "JSON config file; flags win");
        cmd->add_option("--seed", c.seed, "seed for randomized checks");
        return cmd;
    };

    // --- eval ---------------------------------------------------------------
    Common eval_c;
    std::string eval_x = "0,0,2", eval_y = "0,0,1", eval_side = "auto";
    auto* eval_cmd = add_common(
        app.add_subcommand("eval", "evaluate the field and its gradient"), eval_c);
    auto* eval_x_opt = eval_cmd->add_option("--x", eval_x, "observation point x1,x2,x3");
    auto* eval_y_opt = eval_cmd->add_option("--y", eval_y, "source point y1,y2,y3");
    eval_cmd->add_option("--side", eval_side, "gradient side when x3 == 0")
        ->check(CLI::IsMember({"auto", "plus", "minus"}));

    // --- trace --------------------------------------------------------------
    Common trace_c;
    std::string trace_x = "1,0,0", trace_yhat = "0,0";
    auto* trace_cmd = add_common(
        app.add_subcommand("trace", "field of a source on the interface"), trace_c);
    trace_cmd->add_option("--x", trace_x, "observation point x1,x2,x3");
    trace_cmd->add_option("--y-hat", trace_yhat, "interface source point y1,y2");

    // --- verify ---------------------------------------------------------------
    Common verify_c;
    std::string fault;
    auto* verify_cmd = add_common(
        app.add_subcommand("verify", "run the invariant check battery"), verify_c);
    verify_cmd->add_option("--inject-fault", fault,
                           "deliberately break a check (flip-contrast)")
        ->check(CLI::IsMember({"flip-contrast"}));

    // --- oracle-compare -------------------------------------------------------
    Common oc_c;
    bool oc_spectral = false, oc_fd = false;
    int oc_pairs = 50;
    double oc_tol = 1e-6, oc_fd_tol = 0.02, oc_cg_tol = 1e-9, oc_nu_max = 0.0;
    double oc_box_l = 2.0;
    std::string oc_grid_n = "33,65", oc_y = "0,0,0.5";
    auto* oc_cmd = add_common(
        app.add_subcommand("oracle-compare", "closed form vs the numerical oracles"),
        oc_c);
    oc_cmd->add_flag("--spectral", oc_spectral, "run the spectral (Hankel) oracle");
    oc_cmd->add_flag("--fd", oc_fd, "run the finite-difference oracle");
    oc_cmd->add_option("--pairs", oc_pairs, "number of random pairs (spectral)");
    oc_cmd->add_option("--tol", oc_tol, "max relative error allowed (spectral)");
    oc_cmd->add_option("--fd-tol", oc_fd_tol, "rel L2 allowed on the finest grid (fd)");
    oc_cmd->add_option("--grid-n", oc_grid_n, "comma list of odd node counts (fd)");
    oc_cmd->add_option("--box-l", oc_box_l, "box half-width (fd)");
    oc_cmd->add_option("--y", oc_y, "source point y1,y2,y3 (fd)");
    oc_cmd->add_option("--cg-tol", oc_cg_tol, "CG relative residual (fd)");
    oc_cmd->add_option("--nu-max", oc_nu_max, "truncation override (spectral)");

    // --- experiments ----------------------------------------------------------
    Common ex_c;
    std::string ex_name;
    bool ex_curved = false, ex_blowup = false;
    double ex_radius = 5.0, ex_box_scale = 6.0, ex_cg_tol = 1e-8;
    int ex_grid_n = 97, ex_cells = 64;
    std::string ex_scales = "0.4,0.2,0.1", ex_distances = "0.2,0.1,0.05,0.025";
    double ex_a_plus2 = 1.5, ex_a_minus2 = 1.0;
    double ex_v = std::numeric_limits<double>::quiet_NaN();
    bool ex_v_from_config = false;
    std::string ex_region = "-0.5,-0.5,-1,0.5,0.5,0";
    auto* ex_cmd = add_common(
        app.add_subcommand("experiments",
                           "near-interface experiments: curved | blowup"),
        ex_c);
    ex_cmd->add_option("name", ex_name, "experiment name: curved | blowup");
    ex_cmd->add_flag("--curved", ex_curved, "frozen-coefficient error vs scale");
    ex_cmd->add_flag("--blowup", ex_blowup, "mismatch-integral growth exponent");
    ex_cmd->add_option("--radius", ex_radius, "curvature radius (curved)");
    ex_cmd->add_option("--scales", ex_scales, "decreasing scales (curved)");
    ex_cmd->add_option("--box-scale", ex_box_scale,
                       "FD box half-width per unit scale (curved)");
    ex_cmd->add_option("--grid-n", ex_grid_n, "FD nodes per axis (curved)");
    ex_cmd->add_option("--cg-tol", ex_cg_tol, "CG relative residual (curved)");
    ex_cmd->add_option("--a-plus2", ex_a_plus2, "second medium a+ (blowup)");
    ex_cmd->add_option("--a-minus2", ex_a_minus2, "second medium a- (blowup)");
    auto* ex_v_opt =
        ex_cmd->add_option("--v", ex_v, "coefficient mismatch on the region (blowup); "
                                        "defaults to a_plus - a_plus2");
    ex_cmd->add_option("--distances", ex_distances, "decreasing probe heights (blowup)");
    ex_cmd->add_option("--cells", ex_cells, "quadrature cells per axis (blowup)");
    ex_cmd->add_option("--region", ex_region,
                       "lo1,lo2,lo3,hi1,hi2,hi3 of the region (blowup)");

    // --- export-grid ------------------------------------------------------------
    Common eg_c;
    int eg_n = 33;
    double eg_box_l = 2.0, eg_cg_tol = 1e-9;
    std::string eg_y = "0,0,0.5", eg_source = "fd", eg_bc = "exact";
    auto* eg_cmd = add_common(
        app.add_subcommand("export-grid", "write a grid field as CSV or binary"), eg_c);
    eg_cmd->add_option("--grid-n", eg_n, "odd node count per axis");
    eg_cmd->add_option("--box-l", eg_box_l, "box half-width");
    eg_cmd->add_option("--y", eg_y, "source point y1,y2,y3");
    eg_cmd->add_option("--source", eg_source, "fd | closed")
        ->check(CLI::IsMember({"fd", "closed"}));
    eg_cmd->add_option("--bc", eg_bc, "Dirichlet data for the fd solve: exact | zero")
        ->check(CLI::IsMember({"exact", "zero"}));
    eg_cmd->add_option("--cg-tol", eg_cg_tol, "CG relative residual");
    // export-grid emits files, not stdout: binary (default) or csv
    eg_cmd->get_option("--format")->check(CLI::IsMember({"csv", "binary"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInvalidInput;
    }

    try {
        if (eval_cmd->parsed()) {
            std::vector<EvalPair> pairs;
            if (!eval_c.config.empty()) {
                const Json cfg = load_config(
                    eval_c.config, {"a_plus", "a_minus", "points", "format", "side"});
                config_override(cfg, "a_plus", eval_cmd->get_option("--a-plus"),
                                eval_c.a_plus);
                config_override(cfg, "a_minus", eval_cmd->get_option("--a-minus"),
                                eval_c.a_minus);
                config_override(cfg, "format", eval_cmd->get_option("--format"),
                                eval_c.format);
                config_override(cfg, "side", eval_cmd->get_option("--side"), eval_side);
                if (cfg.contains("points")) {
                    for (const auto& p : cfg.at("points")) {
                        const auto xv = p.at("x").get<std::vector<double>>();
                        const auto yv = p.at("y").get<std::vector<double>>();
                        if (xv.size() != 3 || yv.size() != 3)
                            throw std::invalid_argument(
                                "config points need 3 coordinates each");
                        pairs.push_back(
                            {{xv[0], xv[1], xv[2]}, {yv[0], yv[1], yv[2]}});
                    }
                }
            }
            // Flag-given pair wins / is appended when no config points exist.
            if (pairs.empty() || eval_x_opt->count() > 0 || eval_y_opt->count() > 0)
                pairs.push_back({parse_point(eval_x), parse_point(eval_y)});
            const LayeredMedium m(eval_c.a_plus, eval_c.a_minus);
            return run_eval(m, pairs, eval_side, eval_c.format, eval_c.output);
        }

        if (trace_cmd->parsed()) {
            if (!trace_c.config.empty()) {
                const Json cfg = load_config(
                    trace_c.config, {"a_plus", "a_minus", "format", "x", "y_hat"});
                config_override(cfg, "a_plus", trace_cmd->get_option("--a-plus"),
                                trace_c.a_plus);
                config_override(cfg, "a_minus", trace_cmd->get_option("--a-minus"),
                                trace_c.a_minus);
                config_override(cfg, "format", trace_cmd->get_option("--format"),
                                trace_c.format);
                config_override(cfg, "x", trace_cmd->get_option("--x"), trace_x);
                config_override(cfg, "y_hat", trace_cmd->get_option("--y-hat"),
                                trace_yhat);
            }
            const LayeredMedium m(trace_c.a_plus, trace_c.a_minus);
            const auto yh = parse_doubles(trace_yhat);
            if (yh.size() != 2)
                throw std::invalid_argument("--y-hat needs exactly 2 coordinates");
            return run_trace(m, parse_point(trace_x), yh[0], yh[1], trace_c.format,
                             trace_c.output);
        }

        if (verify_cmd->parsed()) {
            if (!verify_c.config.empty()) {
                const Json cfg = load_config(
                    verify_c.config,
                    {"a_plus", "a_minus", "format", "seed", "inject_fault"});
                config_override(cfg, "a_plus", verify_cmd->get_option("--a-plus"),
                                verify_c.a_plus);
                config_override(cfg, "a_minus", verify_cmd->get_option("--a-minus"),
                                verify_c.a_minus);
                config_override(cfg, "format", verify_cmd->get_option("--format"),
                                verify_c.format);
                config_override(cfg, "seed", verify_cmd->get_option("--seed"),
                                verify_c.seed);
                config_override(cfg, "inject_fault",
                                verify_cmd->get_option("--inject-fault"), fault);
            }
            const LayeredMedium m(verify_c.a_plus, verify_c.a_minus);
            return run_verify(m, verify_c.seed, fault == "flip-contrast",
                              verify_c.format, verify_c.output);
        }

        if (oc_cmd->parsed()) {
            if (!oc_c.config.empty()) {
                const Json cfg = load_config(
                    oc_c.config,
                    {"a_plus", "a_minus", "format", "seed", "spectral", "fd", "pairs",
                     "tol", "fd_tol", "grid_n", "box_l", "y", "cg_tol", "nu_max"});
                config_override(cfg, "a_plus", oc_cmd->get_option("--a-plus"),
                                oc_c.a_plus);
                config_override(cfg, "a_minus", oc_cmd->get_option("--a-minus"),
                                oc_c.a_minus);
                config_override(cfg, "format", oc_cmd->get_option("--format"),
                                oc_c.format);
                config_override(cfg, "seed", oc_cmd->get_option("--seed"), oc_c.seed);
                config_override(cfg, "spectral", oc_cmd->get_option("--spectral"),
                                oc_spectral);
                config_override(cfg, "fd", oc_cmd->get_option("--fd"), oc_fd);
                config_override(cfg, "pairs", oc_cmd->get_option("--pairs"), oc_pairs);
                config_override(cfg, "tol", oc_cmd->get_option("--tol"), oc_tol);
                config_override(cfg, "fd_tol", oc_cmd->get_option("--fd-tol"), oc_fd_tol);
                config_override(cfg, "grid_n", oc_cmd->get_option("--grid-n"), oc_grid_n);
                config_override(cfg, "box_l", oc_cmd->get_option("--box-l"), oc_box_l);
                config_override(cfg, "y", oc_cmd->get_option("--y"), oc_y);
                config_override(cfg, "cg_tol", oc_cmd->get_option("--cg-tol"), oc_cg_tol);
                config_override(cfg, "nu_max", oc_cmd->get_option("--nu-max"), oc_nu_max);
            }
            if (!oc_spectral && !oc_fd)
                throw std::invalid_argument(
                    "oracle-compare: choose --spectral and/or --fd");
            const LayeredMedium m(oc_c.a_plus, oc_c.a_minus);
            std::vector<int> ns;
            for (double v : parse_doubles(oc_grid_n)) ns.push_back(static_cast<int>(v));
            return run_oracle_compare(m, oc_spectral, oc_fd, oc_pairs, oc_tol, ns,
                                      oc_box_l, parse_point(oc_y), oc_fd_tol, oc_cg_tol,
                                      oc_nu_max, oc_c.seed, oc_c.format, oc_c.output);
        }

        if (ex_cmd->parsed()) {
            if (!ex_c.config.empty()) {
                const Json cfg = load_config(
                    ex_c.config,
                    {"a_plus", "a_minus", "format", "name", "curved", "blowup",
                     "radius", "scales", "box_scale", "grid_n", "cg_tol", "a_plus2",
                     "a_minus2", "v", "distances", "cells", "region"});
                config_override(cfg, "a_plus", ex_cmd->get_option("--a-plus"),
                                ex_c.a_plus);
                config_override(cfg, "a_minus", ex_cmd->get_option("--a-minus"),
                                ex_c.a_minus);
                config_override(cfg, "format", ex_cmd->get_option("--format"),
                                ex_c.format);
                config_override(cfg, "curved", ex_cmd->get_option("--curved"), ex_curved);
                config_override(cfg, "blowup", ex_cmd->get_option("--blowup"), ex_blowup);
                config_override(cfg, "radius", ex_cmd->get_option("--radius"), ex_radius);
                config_override(cfg, "scales", ex_cmd->get_option("--scales"), ex_scales);
                config_override(cfg, "box_scale", ex_cmd->get_option("--box-scale"),
                                ex_box_scale);
                config_override(cfg, "grid_n", ex_cmd->get_option("--grid-n"), ex_grid_n);
                config_override(cfg, "cg_tol", ex_cmd->get_option("--cg-tol"), ex_cg_tol);
                config_override(cfg, "a_plus2", ex_cmd->get_option("--a-plus2"),
                                ex_a_plus2);
                config_override(cfg, "a_minus2", ex_cmd->get_option("--a-minus2"),
                                ex_a_minus2);
                config_override(cfg, "distances", ex_cmd->get_option("--distances"),
                                ex_distances);
                config_override(cfg, "cells", ex_cmd->get_option("--cells"), ex_cells);
                config_override(cfg, "region", ex_cmd->get_option("--region"), ex_region);
                if (ex_v_opt->count() == 0 && cfg.contains("v")) {
                    ex_v = cfg.at("v").get<double>();
                    ex_v_from_config = true;
                }
                if (cfg.contains("name") && ex_name.empty())
                    ex_name = cfg.at("name").get<std::string>();
            }
            if (!ex_name.empty()) {
                if (ex_name == "curved")
                    ex_curved = true;
                else if (ex_name == "blowup")
                    ex_blowup = true;
                else {
                    std::cerr << "unknown experiment '" << ex_name
                              << "'; known experiments: curved, blowup\n"
                              << ex_cmd->help() << '\n';
                    return kExitInvalidInput;
                }
            }
            if (!ex_curved && !ex_blowup)
                throw std::invalid_argument(
                    "experiments: choose curved or blowup (name or flag)");
            const LayeredMedium m(ex_c.a_plus, ex_c.a_minus);
            if (ex_curved) {
                FrozenExperimentConfig cfg;
                cfg.box_scale = ex_box_scale;
                cfg.grid_n = ex_grid_n;
                cfg.cg_tol = ex_cg_tol;
                cfg.neighborhood_radius = ex_radius / 2.0;
                return run_curved(m, ex_radius, parse_doubles(ex_scales), cfg,
                                  ex_c.format, ex_c.output);
            }
            const LayeredMedium m2(ex_a_plus2, ex_a_minus2);
            ProbeConfig cfg;
            const auto box = parse_doubles(ex_region);
            if (box.size() != 6)
                throw std::invalid_argument("--region needs 6 numbers");
            cfg.region = {{box[0], box[1], box[2]}, {box[3], box[4], box[5]}};
            cfg.distances = parse_doubles(ex_distances);
            cfg.cells_per_axis = ex_cells;
            cfg.v = (ex_v_opt->count() > 0 || ex_v_from_config)
                        ? ex_v
                        : m.a_plus() - m2.a_plus();
            return run_blowup(m, m2, cfg, ex_c.format, ex_c.output);
        }

        if (eg_cmd->parsed()) {
            if (!eg_c.config.empty()) {
                const Json cfg = load_config(
                    eg_c.config, {"a_plus", "a_minus", "format", "grid_n", "box_l", "y",
                                  "source", "bc", "cg_tol"});
                config_override(cfg, "a_plus", eg_cmd->get_option("--a-plus"),
                                eg_c.a_plus);
                config_override(cfg, "a_minus", eg_cmd->get_option("--a-minus"),
                                eg_c.a_minus);
                config_override(cfg, "format", eg_cmd->get_option("--format"),
                                eg_c.format);
                config_override(cfg, "grid_n", eg_cmd->get_option("--grid-n"), eg_n);
                config_override(cfg, "box_l", eg_cmd->get_option("--box-l"), eg_box_l);
                config_override(cfg, "y", eg_cmd->get_option("--y"), eg_y);
                config_override(cfg, "source", eg_cmd->get_option("--source"),
                                eg_source);
                config_override(cfg, "bc", eg_cmd->get_option("--bc"), eg_bc);
                config_override(cfg, "cg_tol", eg_cmd->get_option("--cg-tol"),
                                eg_cg_tol);
            }
            const LayeredMedium m(eg_c.a_plus, eg_c.a_minus);
            return run_export_grid(m, eg_n, eg_box_l, parse_point(eg_y), eg_source,
                                   eg_bc, eg_cg_tol,
                                   eg_c.format == "json" ? "binary" : eg_c.format,
                                   eg_c.output);
        }
    } catch (const NonConvergence& e) {
        std::cerr << "non-convergence: " << e.what()
                  << " (achieved " << e.achieved_error << ")\n";
        return kExitNonConvergence;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitInvalidInput;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid input: " << e.what() << '\n';
        return kExitInvalidInput;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitInvalidInput;
    }
    return kExitOk;
}

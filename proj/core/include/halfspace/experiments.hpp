#pragma once

#include <utility>
#include <vector>

#include "halfspace/fd_solver.hpp"
#include "halfspace/surface.hpp"

namespace halfspace {

// ---------------------------------------------------------------------------
// Frozen-coefficient accuracy near a curved interface
// ---------------------------------------------------------------------------

struct FrozenExperimentConfig {
    double box_scale = 6.0;   // box half-width = box_scale * scale
    int grid_n = 97;          // odd; spacing h = 2 box_scale d / (n - 1)
    double cg_tol = 1e-8;
    double neighborhood_radius = 2.5;
};

struct ScaleErrorRow {
    double scale = 0.0;
    double fd_value = 0.0;
    double frozen_value = 0.0;
    double rel_error = 0.0;   // |fd - frozen| / |fd|
    SolveReport solve;
};

/// For each scale d: put the source at distance d above the surface point
/// along its normal and the probe at distance d below, solve the curved
/// transmission problem by finite differences (frozen-field Dirichlet data),
/// and compare the probe value against the frozen closed form.
///
/// The grid scales with d (spacing and box both proportional), so the flat
/// problem is solved identically at every scale -- its error is the pure
/// discretization floor -- and any scale dependence left in the curved rows
/// is the frozen-coefficient approximation itself. Scales must be
/// decreasing, and grid_n large enough that d >= 4h, i.e. n >= 49 for the
/// default box_scale.
std::vector<ScaleErrorRow> asymptotic_error_experiment(
    const LayeredMedium& medium, const SurfaceGraph& surface, double s1, double s2,
    const std::vector<double>& scales, const FrozenExperimentConfig& config = {});

// ---------------------------------------------------------------------------
// Blow-up of the mismatch integral near an interface point
// ---------------------------------------------------------------------------

struct Box3 {
    Point3 lo, hi;
};

/// Geometry and resolution for the mismatch-integral probe: a region Omega
/// strictly below the interface, a constant coefficient difference v on it,
/// and probe heights d above the interface point s.
struct ProbeConfig {
    Box3 region{{-0.5, -0.5, -1.0}, {0.5, 0.5, 0.0}};
    double v = 0.0;                 // a1 - a2 on the region
    std::vector<double> distances;  // decreasing probe heights
    int cells_per_axis = 64;
    Point3 s{0.0, 0.0, 0.0};        // interface point under the probe

    void validate() const;
};

/// I(d) = integral_Omega v grad u1(x, y) . grad u2(x, y) dx with the probe
/// at y = s + d e3, by midpoint quadrature with analytic gradients; cells
/// within 2d of the probe direction get one extra refinement level.
/// Exactly zero when v == 0.
double orthogonality_integral(const LayeredMedium& medium1, const LayeredMedium& medium2,
                              const ProbeConfig& config, double d);

/// Same traversal with the bare kernel |x - y|^-4 (scaling self-test).
double singular_kernel_integral(const ProbeConfig& config, double d);

struct LogLogFit {
    double slope = 0.0;
    double intercept = 0.0;
    double rms_residual = 0.0;
};

/// Least-squares line through (log d, log |I|).
LogLogFit fit_log_log_slope(const std::vector<std::pair<double, double>>& samples);

struct BlowupReport {
    bool trivial_zero = false;  // v == 0: all integrals vanish identically
    bool consistent = true;     // every I(d) has the sign of v
    LogLogFit fit;              // meaningful only if !trivial_zero && consistent
    std::vector<std::pair<double, double>> samples; // (d, I(d))
};

/// Evaluate I(d) over config.distances (at least 3) and fit the growth
/// exponent of |I| as d -> 0.
BlowupReport blowup_exponent(const LayeredMedium& medium1, const LayeredMedium& medium2,
                             const ProbeConfig& config);

} // namespace halfspace

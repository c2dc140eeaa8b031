#pragma once

#include <array>
#include <functional>
#include <optional>

#include "halfspace/grid.hpp"

namespace halfspace {

// Direct finite-difference solve of the transmission problem on a box:
// conservative 7-point stencil with harmonic face averaging, point source
// as a nearest-node delta load, Dirichlet boundary. This route never looks
// at the closed form (except optionally for its boundary data), so an
// agreement between the two is evidence for both.

/// Outcome of one solve / comparison.
struct SolveReport {
    int iterations = 0;
    double final_residual = 0.0;   // relative to the right-hand side
    double rel_l2_error = 0.0;     // vs reference, outside the excluded ball
    double max_rel_error = 0.0;
    double excluded_radius = 0.0;
    bool converged = false;
};

/// Assembled system -div(a grad u) = delta_y with Dirichlet data folded in.
/// The operator is symmetric positive definite on the interior nodes.
struct FdSystem {
    BoxGrid grid;
    CoefficientField faces;
    std::vector<double> rhs;       // interior entries; boundary entries zero
    std::vector<double> boundary;  // Dirichlet values at boundary nodes
    int source_i = 0, source_j = 0, source_k = 0;

    /// out = A u on interior nodes, boundary entries of u ignored (taken 0).
    void apply(const std::vector<double>& u, std::vector<double>& out) const;

    /// One stencil row (diagonal and the 6 neighbor coefficients in the
    /// order -x1,+x1,-x2,+x2,-x3,+x3) before boundary elimination.
    /// Interior rows sum to zero: the scheme is in discrete divergence form.
    struct StencilRow {
        double center;
        std::array<double, 6> neighbor;
    };
    StencilRow stencil_row(int i, int j, int k) const;
};

using BoundaryValues = std::function<double(const Point3&)>;

/// Build the system for a point source at y (snapped to the nearest node).
/// y must lie strictly inside the box and off the interface plane.
FdSystem build_system(const LayeredMedium& medium, const BoxGrid& grid, const Point3& y,
                      const BoundaryValues& dirichlet = nullptr);

/// Same, but with an arbitrary material sampler (curved interfaces).
FdSystem build_system(const CoefficientSampler& sampler, const BoxGrid& grid,
                      const Point3& y, const BoundaryValues& dirichlet = nullptr);

/// Same, reusing an already-built face field (several sources, one medium).
FdSystem build_system(CoefficientField faces, const BoxGrid& grid, const Point3& y,
                      const BoundaryValues& dirichlet = nullptr);

/// Conjugate-gradient solve to relative residual <= tol. Deterministic.
/// The optional callback sees every iterate (used by the energy-norm tests).
using IterateCallback = std::function<void(int iter, const std::vector<double>& u)>;

std::pair<GridField, SolveReport> solve_system(const FdSystem& system, double tol,
                                               int max_iterations = 0,
                                               const IterateCallback& callback = nullptr);

/// Solve with Dirichlet data from the closed form and compare interior nodes
/// against it, excluding a ball of radius 4h around the source.
SolveReport compare_to_closed_form(const LayeredMedium& medium, const BoxGrid& grid,
                                   const Point3& y, double tol);

} // namespace halfspace

#pragma once

#include <functional>
#include <stdexcept>

namespace halfspace {

/// Controls for the adaptive integration of the semi-infinite spectral
/// integrals: where to truncate and how hard to try.
struct QuadratureSpec {
    double nu_max = 0.0;          // truncation point; 0 = pick from the decay rate
    double abs_tol = 1e-12;
    double rel_tol = 1e-9;
    int max_subdivisions = 12000; // total panel budget

    void validate() const {
        if (!(abs_tol > 0.0) || !(rel_tol > 0.0))
            throw std::invalid_argument("QuadratureSpec: tolerances must be positive");
        if (max_subdivisions < 1)
            throw std::invalid_argument("QuadratureSpec: max_subdivisions must be >= 1");
    }
};

/// Outcome of one adaptive integration.
struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;  // absolute
    int panels = 0;
    bool converged = false;
};

/// Adaptive bisection with a nested Gauss(7)/Kronrod(15) rule per panel.
///
/// [a, b] is seeded with uniform panels of width <= initial_panel_width
/// (pass 0 to use (b-a)/8); the panel with the largest error estimate is
/// split until the summed estimate meets max(abs_tol, rel_tol * |value|)
/// or the subdivision budget runs out. Never throws on non-convergence;
/// the result carries converged = false and the achieved estimate.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f,
                                    double a, double b,
                                    const QuadratureSpec& spec,
                                    double initial_panel_width = 0.0);

} // namespace halfspace

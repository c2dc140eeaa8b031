#pragma once

#include <functional>

#include "halfspace/geometry.hpp"
#include "halfspace/medium.hpp"
#include "halfspace/quadrature.hpp"

namespace halfspace {

// Spectral-domain route to the same field: Fourier transform in the two
// horizontal variables turns the transmission problem into a two-point ODE
// in x3 whose solution is a pair of decaying exponentials; the field is
// recovered by a Bessel-J0 radial inversion. Everything here is derived
// independently of the closed form in green.hpp, which is what makes it an
// oracle for it.

/// One spectral evaluation request: radial frequency nu = |xi| and the two
/// heights of the transformed problem.
struct ProfileQuery {
    double nu;   // >= 0
    double x3;
    double y3;   // != 0 for profile evaluation
};

/// Transformed one-dimensional profile w(nu, x3, y3):
///
///   w = exp(-nu |x3 - y3|) / (2 nu a+)  +  b exp(-nu (|x3| + |y3|)) / (2 nu a+)
///
/// for y3 > 0, and the (a-, -b) variant for y3 < 0. Strictly positive.
/// nu == 0 throws SingularEvaluation (1/nu pole), as does y3 == 0.
double profile_w(const LayeredMedium& medium, const ProfileQuery& q);

/// nu * w, which stays finite as nu -> 0; this is the form the radial
/// inversion integrates so the pole never appears numerically.
double profile_nu_w(const LayeredMedium& medium, const ProfileQuery& q);

/// Residuals from checking that the closed-form profile actually solves its
/// defining ODE problem, all by numerical differentiation in x3:
/// second-derivative equation away from {0, y3}, value and flux matching at
/// the interface, unit-strength source jump at y3, and decay at |x3| = 50/nu.
/// All residuals are relative; failures are reported, never thrown.
struct ProfileOdeReport {
    double ode_residual = 0.0;        // max over sample points of |w'' - nu^2 w| / (nu^2 w)
    double value_continuity = 0.0;    // |w(0+) - w(0-)| / w(0)
    double flux_continuity = 0.0;     // |a+ w'(0+) - a- w'(0-)| / |a+ w'(0+)|
    double source_jump = 0.0;         // |[w'](y3) + 1/a_side| * a_side
    double decay = 0.0;               // max(w(+50/nu), w(-50/nu)) / w(0)

    double max_residual() const;
};

ProfileOdeReport verify_profile_ode(const LayeredMedium& medium, double nu, double y3);

/// Self-test of the quadrature against the closed Laplace transform of J0:
/// integral_0^inf exp(-nu t) J0(nu rho) d nu  =  1 / sqrt(rho^2 + t^2),  t > 0.
struct LaplaceHankelCheck {
    double numeric = 0.0;
    double closed_form = 0.0;
    double error_estimate = 0.0;
    bool converged = false;
};

LaplaceHankelCheck laplace_hankel_check(double rho, double t, const QuadratureSpec& quad);

/// Radial inversion u = (1/2 pi) integral_0^inf nu w J0(nu rho) d nu of an
/// arbitrary profile, supplied as nu -> nu * w(nu). `decay_rate` is the
/// exponential decay rate of nu*w, used for the truncation point and the
/// tail bound when the caller leaves nu_max = 0.
struct HankelResult {
    double value = 0.0;
    double error_estimate = 0.0;   // quadrature estimate + tail bound
    double tail_bound = 0.0;
    int panels = 0;
    bool converged = false;
};

HankelResult invert_radial_profile(const std::function<double(double)>& nu_w,
                                   double rho, double decay_rate,
                                   const QuadratureSpec& quad);

/// Full spectral reconstruction of the field at x for a source at y.
/// Requires |x3| + |y3| > 0 (exponential decay of the integrand) and
/// y3 != 0; violations throw SingularEvaluation.
HankelResult hankel_invert(const LayeredMedium& medium, const Point3& x,
                           const Point3& y, const QuadratureSpec& quad);

/// Convenience wrapper returning just the value; throws NonConvergence
/// when the requested tolerance was not certified.
double hankel_invert_value(const LayeredMedium& medium, const Point3& x,
                           const Point3& y, const QuadratureSpec& quad);

} // namespace halfspace

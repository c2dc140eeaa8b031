#include "halfspace/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "halfspace/bessel.hpp"
#include "halfspace/errors.hpp"

namespace halfspace {

namespace {

void check_profile_domain(const ProfileQuery& q, bool need_positive_nu) {
    if (q.nu < 0.0)
        throw std::domain_error("profile_w: nu must be nonnegative");
    if (need_positive_nu && q.nu == 0.0)
        throw SingularEvaluation("profile_w: nu == 0 hits the 1/nu pole");
    if (q.y3 == 0.0)
        throw SingularEvaluation("profile_w: source height y3 must be nonzero");
}

} // namespace

double profile_nu_w(const LayeredMedium& medium, const ProfileQuery& q) {
    check_profile_domain(q, /*need_positive_nu=*/false);
    const double b = contrast(medium);
    const double direct = std::exp(-q.nu * std::abs(q.x3 - q.y3));
    const double image = std::exp(-q.nu * (std::abs(q.x3) + std::abs(q.y3)));
    if (q.y3 > 0.0)
        return (direct + b * image) / (2.0 * medium.a_plus());
    return (direct - b * image) / (2.0 * medium.a_minus());
}

double profile_w(const LayeredMedium& medium, const ProfileQuery& q) {
    check_profile_domain(q, /*need_positive_nu=*/true);
    return profile_nu_w(medium, q) / q.nu;
}

double ProfileOdeReport::max_residual() const {
    return std::max({ode_residual, value_continuity, flux_continuity, source_jump, decay});
}

ProfileOdeReport verify_profile_ode(const LayeredMedium& medium, double nu, double y3) {
    ProfileOdeReport rep;
    const auto w = [&](double x3) { return profile_w(medium, {nu, x3, y3}); };
    const double Y = std::abs(y3);

    // Second-derivative residual away from the kinks at 0 and y3.
    {
        const double delta = std::min(1e-3 / std::max(nu, 1.0), 0.05 * Y);
        const double samples[] = {0.45 * y3, 1.8 * y3, -0.7 * y3, -1.6 * y3};
        for (double s : samples) {
            const double wm = w(s - delta), w0 = w(s), wp = w(s + delta);
            const double d2 = (wp - 2.0 * w0 + wm) / (delta * delta);
            const double res = std::abs(d2 - nu * nu * w0) / (nu * nu * w0);
            rep.ode_residual = std::max(rep.ode_residual, res);
        }
    }

    // One-sided derivative at x0 from the given side, 4th order.
    const auto deriv = [&](double x0, double side, double step) {
        const double f0 = w(x0);
        const double f1 = w(x0 + side * step);
        const double f2 = w(x0 + side * 2.0 * step);
        const double f3 = w(x0 + side * 3.0 * step);
        const double f4 = w(x0 + side * 4.0 * step);
        return side * (-25.0 * f0 + 48.0 * f1 - 36.0 * f2 + 16.0 * f3 - 3.0 * f4) /
               (12.0 * step);
    };

    // Interface matching: value and flux.
    {
        const double eps = 1e-9 * std::min(1.0, Y);
        rep.value_continuity = std::abs(w(eps) - w(-eps)) / w(0.0);

        const double step = std::min(0.1 * Y, 1e-2 / std::max(nu, 1.0));
        const double flux_above = medium.a_plus() * deriv(0.0, +1.0, step);
        const double flux_below = medium.a_minus() * deriv(0.0, -1.0, step);
        rep.flux_continuity = std::abs(flux_above - flux_below) / std::abs(flux_above);
    }

    // Unit source: the derivative jumps by -1/a at x3 = y3.
    {
        const double step = std::min(0.1 * Y, 1e-2 / std::max(nu, 1.0));
        const double jump = deriv(y3, +1.0, step) - deriv(y3, -1.0, step);
        const double a_side = y3 > 0.0 ? medium.a_plus() : medium.a_minus();
        rep.source_jump = std::abs(jump + 1.0 / a_side) * a_side;
    }

    // Decay far from source and interface.
    {
        const double far = 50.0 / nu;
        rep.decay = std::max(w(far), w(-far)) / w(0.0);
    }

    return rep;
}

LaplaceHankelCheck laplace_hankel_check(double rho, double t, const QuadratureSpec& quad) {
    if (!(t > 0.0))
        throw std::domain_error("laplace_hankel_check: t must be positive");
    if (rho < 0.0)
        throw std::domain_error("laplace_hankel_check: rho must be nonnegative");

    const double nu_max = quad.nu_max > 0.0 ? quad.nu_max : 40.0 / t;
    const auto f = [&](double nu) { return std::exp(-nu * t) * bessel_j0(nu * rho); };
    const double panel_w = rho > 0.0 ? std::min(std::numbers::pi / rho, nu_max / 8.0)
                                     : nu_max / 8.0;
    const QuadratureResult r = integrate_adaptive(f, 0.0, nu_max, quad, panel_w);

    LaplaceHankelCheck out;
    out.numeric = r.value;
    out.closed_form = 1.0 / std::hypot(rho, t);
    out.error_estimate = r.error_estimate + std::exp(-nu_max * t) / t; // + tail
    out.converged = r.converged;
    return out;
}

HankelResult invert_radial_profile(const std::function<double(double)>& nu_w,
                                   double rho, double decay_rate,
                                   const QuadratureSpec& quad) {
    if (!(decay_rate > 0.0))
        throw SingularEvaluation(
            "invert_radial_profile: integrand does not decay (|x3| + |y3| == 0)");

    const double nu_max = quad.nu_max > 0.0 ? quad.nu_max : 40.0 / decay_rate;
    const auto f = [&](double nu) { return nu_w(nu) * bessel_j0(nu * rho); };
    const double panel_w = rho > 0.0 ? std::min(std::numbers::pi / rho, nu_max / 8.0)
                                     : nu_max / 8.0;
    const QuadratureResult r = integrate_adaptive(f, 0.0, nu_max, quad, panel_w);

    HankelResult out;
    const double inv_2pi = 1.0 / (2.0 * std::numbers::pi);
    out.value = inv_2pi * r.value;
    // |J0| <= 1 and |nu w| <= nu_w(nu_max) ~ its own tail envelope:
    // integral_numax^inf |nu w| <= nu_w(nu_max) / decay_rate.
    out.tail_bound = inv_2pi * std::abs(nu_w(nu_max)) / decay_rate;
    out.error_estimate = inv_2pi * r.error_estimate + out.tail_bound;
    out.panels = r.panels;
    out.converged =
        r.converged &&
        out.error_estimate <= std::max(quad.abs_tol, quad.rel_tol * std::abs(out.value));
    return out;
}

HankelResult hankel_invert(const LayeredMedium& medium, const Point3& x,
                           const Point3& y, const QuadratureSpec& quad) {
    if (y.x3 == 0.0)
        throw SingularEvaluation("hankel_invert: y3 == 0 is outside the spectral route");
    const double s_image = std::abs(x.x3) + std::abs(y.x3);
    if (!(s_image > 0.0))
        throw SingularEvaluation("hankel_invert: |x3| + |y3| must be positive");

    // The direct term of the profile decays like exp(-nu |x3 - y3|), which
    // on the source side is slower than the image rate |x3| + |y3|; the
    // truncation point must follow the slow rate or the tail leaks.
    const double s_direct = std::abs(x.x3 - y.x3);
    const double rho = horizontal_distance(x, y);
    if (s_direct == 0.0 && rho == 0.0)
        throw SingularEvaluation("hankel_invert: x == y is a singular evaluation");

    double nu_max = quad.nu_max;
    if (nu_max <= 0.0)
        nu_max = s_direct > 0.0 ? 40.0 / s_direct : 4000.0 / s_image;

    const auto f = [&, x3 = x.x3, y3 = y.x3](double nu) {
        return profile_nu_w(medium, {nu, x3, y3}) * bessel_j0(nu * rho);
    };
    const double panel_w = rho > 0.0 ? std::min(std::numbers::pi / rho, nu_max / 8.0)
                                     : nu_max / 8.0;
    const QuadratureResult r = integrate_adaptive(f, 0.0, nu_max, quad, panel_w);

    HankelResult out;
    const double inv_2pi = 1.0 / (2.0 * std::numbers::pi);
    out.value = inv_2pi * r.value;

    // Tail beyond nu_max: |nu w| <= (1 + |b|) exp(-nu s_direct) / (2 a_side).
    // Two valid envelopes for the remaining integral -- plain exponential
    // decay, and the J0 oscillation (alternating half-periods, first-chunk
    // bound) -- take whichever is smaller.
    const double a_side = y.x3 > 0.0 ? medium.a_plus() : medium.a_minus();
    const double amp = (1.0 + std::abs(contrast(medium))) *
                       std::exp(-nu_max * s_direct) / (2.0 * a_side);
    double tail = std::numeric_limits<double>::infinity();
    if (s_direct > 0.0) tail = amp / s_direct;
    if (rho > 0.0) {
        const double osc = amp * std::numbers::pi / rho *
                           std::sqrt(2.0 / (std::numbers::pi * nu_max * rho));
        tail = std::min(tail, osc);
    }
    out.tail_bound = inv_2pi * tail;
    out.error_estimate = inv_2pi * r.error_estimate + out.tail_bound;
    out.panels = r.panels;
    out.converged =
        r.converged &&
        out.error_estimate <= std::max(quad.abs_tol, quad.rel_tol * std::abs(out.value));
    return out;
}

double hankel_invert_value(const LayeredMedium& medium, const Point3& x,
                           const Point3& y, const QuadratureSpec& quad) {
    const HankelResult r = hankel_invert(medium, x, y, quad);
    if (!r.converged)
        throw NonConvergence("hankel_invert: quadrature did not reach tolerance",
                             r.error_estimate);
    return r.value;
}

} // namespace halfspace

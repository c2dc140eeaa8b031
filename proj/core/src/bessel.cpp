#include "halfspace/bessel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace halfspace {

namespace {

// Below this the Maclaurin series still sums with ~1e-12 cancellation noise;
// above it the asymptotic series bottoms out below 1e-11. A split at the
// textbook value 8 leaves the asymptotic floor near 1e-8, which is too coarse.
constexpr double kSeriesCutoff = 12.0;

double j0_series(double t) {
    // J0(t) = sum_k (-1)^k (t^2/4)^k / (k!)^2, alternating with a
    // remainder no larger than the first dropped term once terms decrease.
    const double q = 0.25 * t * t;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k <= 80; ++k) {
        term *= -q / (static_cast<double>(k) * k);
        sum += term;
        if (std::abs(term) < 1e-18 && k > 0.5 * t) break;
    }
    return sum;
}

double j0_asymptotic(double t) {
    // J0(t) = sqrt(2/(pi t)) [ P(t) cos(t - pi/4) - Q(t) sin(t - pi/4) ],
    // P = 1 - c2 u^2 + c4 u^4 - ...,  Q = -c1 u + c3 u^3 - ...,  u = 1/(8t),
    // c_m = c_{m-1} (2m-1)^2 / m. Divergent series: stop at the smallest term.
    const double u = 1.0 / (8.0 * t);
    double p = 1.0;
    double q = 0.0;
    double term = 1.0;       // c_m u^m
    double prev = 1.0;
    double sign = 1.0;       // handles the (-1)^k pairing of the two series
    for (int m = 1; m <= 40; ++m) {
        const double odd = 2.0 * m - 1.0;
        term *= odd * odd * u / m;
        if (term >= prev) break; // series started diverging
        prev = term;
        if (m % 2 == 1) {
            q -= sign * term;
        } else {
            sign = -sign;
            p += sign * term;
        }
        if (term < 1e-18) break;
    }
    const double chi = t - 0.25 * std::numbers::pi;
    return std::sqrt(2.0 / (std::numbers::pi * t)) * (p * std::cos(chi) - q * std::sin(chi));
}

} // namespace

double bessel_j0(double t) {
    if (t < 0.0)
        throw std::domain_error("bessel_j0: negative argument");
    if (t <= kSeriesCutoff) return j0_series(t);
    return j0_asymptotic(t);
}

} // namespace halfspace

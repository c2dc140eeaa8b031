#pragma once

namespace halfspace {

/// Bessel function of the first kind, order zero, for t >= 0.
///
/// Maclaurin series below the crossover, Hankel amplitude/phase expansion
/// above it; absolute error below 1e-10 through t = 1000. Negative
/// arguments throw std::domain_error (extend by evenness at the call site
/// if ever needed).
double bessel_j0(double t);

} // namespace halfspace

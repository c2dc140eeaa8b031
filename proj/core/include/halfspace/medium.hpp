#pragma once

#include <stdexcept>
#include <cmath>

#include "halfspace/geometry.hpp"

namespace halfspace {

/// Two homogeneous half-spaces joined at the plane x3 = 0:
/// conductivity a_plus for x3 > 0 and a_minus for x3 < 0.
class LayeredMedium {
public:
    LayeredMedium(double a_plus, double a_minus) : a_plus_(a_plus), a_minus_(a_minus) {
        if (!(a_plus > 0.0) || !std::isfinite(a_plus))
            throw std::invalid_argument("LayeredMedium: a_plus must be positive and finite");
        if (!(a_minus > 0.0) || !std::isfinite(a_minus))
            throw std::invalid_argument("LayeredMedium: a_minus must be positive and finite");
    }

    double a_plus() const { return a_plus_; }
    double a_minus() const { return a_minus_; }

    /// Coefficient on a given side; the interface itself has no single value.
    double coefficient(Side s) const {
        if (s == Side::Plus) return a_plus_;
        if (s == Side::Minus) return a_minus_;
        throw AmbiguousSide("LayeredMedium::coefficient: point lies on the interface");
    }

    /// Medium with the two half-spaces swapped.
    LayeredMedium swapped() const { return LayeredMedium(a_minus_, a_plus_); }

    bool homogeneous() const { return a_plus_ == a_minus_; }

private:
    double a_plus_;
    double a_minus_;
};

/// Interface reflection strength b = (a+ - a-)/(a+ + a-), always in (-1, 1).
/// Antisymmetric under swapping the two half-spaces.
inline double contrast(const LayeredMedium& m) {
    return (m.a_plus() - m.a_minus()) / (m.a_plus() + m.a_minus());
}

} // namespace halfspace

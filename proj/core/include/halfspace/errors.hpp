#pragma once

#include <stdexcept>
#include <string>

namespace halfspace {

/// Evaluation requested at a point where the field is singular
/// (coincident source/observation points, zero radial frequency, ...).
class SingularEvaluation : public std::domain_error {
public:
    explicit SingularEvaluation(const std::string& what) : std::domain_error(what) {}
};

/// A one-sided quantity was requested on the interface without saying which side.
class AmbiguousSide : public std::domain_error {
public:
    explicit AmbiguousSide(const std::string& what) : std::domain_error(what) {}
};

/// An iterative procedure stopped before reaching its tolerance.
/// The achieved error estimate travels with the message.
class NonConvergence : public std::runtime_error {
public:
    NonConvergence(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_error(achieved) {}
    double achieved_error;
};

} // namespace halfspace

#pragma once

#include <stdexcept>
#include <string>

namespace zigzag {

// Parameter fails a precondition (wrong sign, wrong range, inconsistent pair).
class invalid_parameter : public std::invalid_argument {
public:
    explicit invalid_parameter(const std::string& what)
        : std::invalid_argument(what) {}
};

// Parameter combination is valid physics but outside what this library models
// (currently: lambda + 2*alpha2 == 0 with alpha1 != 0, which needs a different
// displaced frame than the one implemented here).
class out_of_scope : public std::invalid_argument {
public:
    explicit out_of_scope(const std::string& what)
        : std::invalid_argument(what) {}
};

// A closed-form expression hits a vanishing denominator or leaves the
// representable range at a specific propagation distance.
class singular_point : public std::runtime_error {
public:
    singular_point(const std::string& what, double z)
        : std::runtime_error(what + " at Z = " + std::to_string(z)), z_(z) {}
    double z() const noexcept { return z_; }

private:
    double z_;
};

// Caller picked an evaluation path that does not apply to the given regime;
// the dispatching entry points choose the right one automatically.
class dispatch_error : public std::logic_error {
public:
    explicit dispatch_error(const std::string& what)
        : std::logic_error(what) {}
};

// Request exceeds a precomputed table or a hard resource ceiling.
class resource_error : public std::length_error {
public:
    explicit resource_error(const std::string& what)
        : std::length_error(what) {}
};

// Adaptive integration cannot make progress (step size underflow).
class stiffness_error : public std::runtime_error {
public:
    stiffness_error(const std::string& what, double z)
        : std::runtime_error(what + " at Z = " + std::to_string(z)), z_(z) {}
    double z() const noexcept { return z_; }

private:
    double z_;
};

} // namespace zigzag

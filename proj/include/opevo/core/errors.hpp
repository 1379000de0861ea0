#pragma once

#include <stdexcept>
#include <string>

namespace opevo {

// Tripped when a symbolic operation would exceed the configured monomial
// degree cap (commutator towers grow degree quickly for non-quadratic
// generators).
struct DegreeGuardError : std::runtime_error {
    explicit DegreeGuardError(const std::string& msg) : std::runtime_error(msg) {}
};

// Tripped when a grid application would amplify beyond floating-point range
// (e.g. high spectral derivative orders).
struct OverflowGuardError : std::runtime_error {
    explicit OverflowGuardError(const std::string& msg) : std::runtime_error(msg) {}
};

// Configuration/input validation failure; message carries the field path.
struct ValidationError : std::runtime_error {
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace opevo

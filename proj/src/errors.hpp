// errors.hpp — exception taxonomy. The CLI maps these onto exit codes.

#pragma once

#include <stdexcept>
#include <string>

namespace ffd {

// Bad user input: malformed config, unknown keys, out-of-range parameters.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A requested schedule cannot be realized (drive amplitude would cross zero,
// detuning endpoints with mixed signs, ...).
struct infeasible_schedule_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Numerical-accuracy failure: integrator norm drift, step-size underflow,
// quadrature non-convergence.
struct accuracy_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Truncated basis too small for the requested state. Carries the smallest
// dimension that would satisfy the tail-mass rule.
struct truncation_error : accuracy_error {
    truncation_error(const std::string& msg, int minimal_dim_)
        : accuracy_error(msg), minimal_dim(minimal_dim_) {}
    int minimal_dim;
};

} // namespace ffd

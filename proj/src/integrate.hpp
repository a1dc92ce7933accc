// integrate.hpp — adaptive embedded Runge–Kutta propagation of
// d psi / dt = -i H(t) psi in the truncated number basis.
//
// Dormand–Prince 5(4) with the usual mixed absolute/relative error control.
// The state is never renormalized; the worst norm deviation over the run is
// reported as a quality signal and trips an error when it exceeds 1e-6.

#pragma once

#include <vector>

#include "fock.hpp"
#include "kernels.hpp"
#include "schedule.hpp"

namespace ffd {

struct IntegratorOptions {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    bool parallel_kernel = true;
    long max_steps = 100000000L;
};

struct StepStats {
    long accepted = 0;
    long rejected = 0;
};

struct EvolutionResult {
    FockVector final_state;
    std::vector<std::pair<double, Vector>> trajectory; // at requested sample times
    double norm_drift = 0.0;                           // max | ||psi|| - 1 |
    StepStats steps;
};

// Integrates over the schedule's [t_begin, t_end]. `sample_times` must be
// sorted and lie within the span; the integrator lands on each exactly.
// Throws accuracy_error on step-size underflow or norm drift above 1e-6,
// std::invalid_argument on dimension mismatch.
EvolutionResult evolve(const HamiltonianSchedule& schedule, const FockVector& psi0,
                       const IntegratorOptions& opt = {},
                       const std::vector<double>& sample_times = {});

} // namespace ffd

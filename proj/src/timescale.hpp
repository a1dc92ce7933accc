// timescale.hpp — the scaled clock that turns the exact-displacement drive
// ramp into a detuning schedule at fixed drive amplitude.
//
// The reference dynamics runs in scaled time Lambda over [0, t_ramp]; wall
// time t and Lambda are related implicitly by
//   Lambda + (delta_i/delta_f - 1) [G(Lambda) + 60 W(Lambda) / (delta_i^2 t_ramp^2)] = t,
// whose left side is strictly increasing as long as the corrected drive
// omega_ff stays away from zero. Solving for Lambda(t) gives the detuning
// schedule delta_i * omega_i / omega_ff(Lambda(t)).

#pragma once

#include "pulses.hpp"

namespace ffd {

struct ScaledClock {
    double delta_i = 0.0;   // rad/ns, same sign as delta_f
    double delta_f = 0.0;   // rad/ns
    double omega_i = 0.0;   // drive at t = 0, rad/ns, != 0
    double t_ramp = 0.0;    // reference-time duration, ns
    double t_final = 0.0;   // wall-clock duration: (delta_i/delta_f + 1)/2 * t_ramp
    double solver_tol = 1e-12;
    RampSpec ramp;          // implied ramp: omega_i -> omega_i * delta_i/delta_f at delta_i
};

// Validates signs, computes t_final and checks omega_ff for zero crossings
// on a 1001-point grid (bisecting to locate a violation for the message).
// Throws std::domain_error on sign violations, infeasible_schedule_error
// when the drive would cross zero.
ScaledClock make_clock(double delta_i, double delta_f, double omega_i,
                       double t_ramp, double solver_tol = 1e-12);

// Wall-clock time at which the scaled time reaches `lambda` (the implicit
// relation evaluated in closed form).
double time_of_lambda(const ScaledClock& clock, double lambda);

// The unique Lambda in [0, t_ramp] with time_of_lambda(Lambda) = t, solved
// by bracketed bisection refined with Newton steps.
double lambda_of(const ScaledClock& clock, double t);

// Detuning schedule delta_i * omega_i / omega_ff(Lambda(t)).
double delta_ff_ts(const ScaledClock& clock, double t);

// S(t) = omega_i / omega_ff(Lambda(t)) = delta_ff_ts(t) / delta_i; also the
// derivative dLambda/dt.
double scaling_factor(const ScaledClock& clock, double t);

} // namespace ffd

// pulses.hpp — drive-amplitude trajectory design for fast displacement.
//
// A ramp takes the drive from omega_i to omega_f over t_ramp with a quintic
// smoothstep whose first and second derivatives vanish at both endpoints.
// From it we derive, in closed form, the corrected drive that makes the
// displacement exact at the final time, the instantaneous displacement of
// the driven state, and the complex drive of the counter-diabatic variant.

#pragma once

#include <complex>

#include "errors.hpp"
#include "units.hpp"

namespace ffd {

using complexd = std::complex<double>;

// Values of the quintic smoothstep and its companions at s = t/t_ramp:
//   g  = 10 s^3 - 15 s^4 + 6 s^5          dg, d2g: derivatives w.r.t. s
//   w  = s - 3 s^2 + 2 s^3                (= d2g / 60)
//   G  = integral of g, per unit t_ramp:  (5/2) s^4 - 3 s^5 + s^6
//   W  = integral of w, per unit t_ramp:  s^2/2 - s^3 + s^4/2
struct SmoothstepValues {
    double g;
    double dg;
    double d2g;
    double G;
    double w;
    double W;
};

// Throws std::domain_error outside [0, 1].
SmoothstepValues smoothstep(double s);

// The ramp problem: endpoints of the drive amplitude, ramp duration and the
// fixed detuning. All angular (rad/ns), times in ns.
struct RampSpec {
    double omega_i = 0.0; // drive at t = 0
    double omega_f = 0.0; // drive at t = t_ramp
    double t_ramp = 0.0;  // ns, > 0
    double delta = 0.0;   // rad/ns, != 0

    // Convenience constructor taking nu = omega/2pi values in MHz.
    static RampSpec from_mhz(double omega_i_mhz, double omega_f_mhz,
                             double t_ramp_ns, double delta_mhz);
};

// Everything the schedules need at one instant, all closed-form.
struct RampSample {
    double t = 0.0;
    double omega0 = 0.0;      // rad/ns
    double omega0_dot = 0.0;  // rad/ns^2
    double omega0_ddot = 0.0; // rad/ns^3
    double omega_ff = 0.0;    // omega0 + omega0_ddot / delta^2
    double alpha0 = 0.0;      // omega0 / delta
    double alpha0_dot_over_delta = 0.0;
    complexd alpha_tilde;     // alpha0 + i alpha0_dot / delta
    complexd omega_cd;        // omega0 - i omega0_dot / delta
};

// Throws std::domain_error when t is outside [0, t_ramp] (small roundoff
// slack is tolerated at the endpoints).
RampSample sample_ramp(const RampSpec& spec, double t);

// Endpoint derivatives of the drive; all four vanish by construction.
struct BoundaryReport {
    double omega0_start = 0.0;
    double omega0_end = 0.0;
    double omega0_dot_start = 0.0;
    double omega0_dot_end = 0.0;
    double omega0_ddot_start = 0.0;
    double omega0_ddot_end = 0.0;
    bool derivatives_vanish = false;
};

BoundaryReport verify_boundaries(const RampSpec& spec);

// Rate of the global phase accumulated by the exactly-displaced state:
// alpha_ff(t) * (d^2 alpha0/dt^2)(t) / delta.
double ff_phase_rate(const RampSpec& spec, double t);

// Largest |alpha_tilde| visited over [0, t_ramp] (501-point scan); used to
// size truncated bases.
double max_tilde_displacement(const RampSpec& spec);

// Default truncation for a schedule whose largest visited displacement is
// alpha_max: ceil(alpha_max^2 + 8 alpha_max + 12). Keeps the coherent tail
// mass far below 1e-10 for all parameter sets exercised here.
int default_dim_for(double alpha_max);

} // namespace ffd

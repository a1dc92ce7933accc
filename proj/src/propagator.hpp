// propagator.hpp — single-resonator schedules, the analytic exactly-displaced
// state with its global phase, and the counter-diabatic verification run.

#pragma once

#include <vector>

#include "integrate.hpp"
#include "pulses.hpp"
#include "timescale.hpp"

namespace ffd {

// Uncorrected ramp: H/hbar = delta a^dag a - omega0(t) (a^dag + a).
HamiltonianSchedule h0_schedule(const RampSpec& spec, int dim);

// Corrected ramp with the exact-displacement drive omega_ff(t). When
// `with_phase_term` is set, the classical-number term delta * alpha_ff(t)^2
// is kept so the propagated global phase matches analytic_ff_state.
HamiltonianSchedule ff_schedule(const RampSpec& spec, int dim, bool with_phase_term = false);

// Counter-diabatic drive omega_cd(t) = omega0 - i omega0_dot/delta (complex;
// drives both quadratures).
HamiltonianSchedule cd_schedule(const RampSpec& spec, int dim);

// Fixed drive omega_i with the scaled-clock detuning schedule over
// [0, t_final].
HamiltonianSchedule ffts_schedule(const ScaledClock& clock, int dim);

// Fixed drive omega_i with a linear detuning ramp delta_i -> delta_f over
// [0, t_final]; the comparison baseline.
HamiltonianSchedule linear_detuning_schedule(double delta_i, double delta_f,
                                             double omega_i, double t_final, int dim);

// Exactly-displaced state at time t for initial number-basis coefficients c:
//   e^{-i phi(t)} D(alpha_tilde(t)) sum_n c_n e^{-i n delta t} |n>,
// phi(t) the integral of ff_phase_rate from 0 to t (adaptive quadrature,
// 1e-10). Requires sum |c_n|^2 = 1.
FockVector analytic_ff_state(const RampSpec& spec, const std::vector<complexd>& c,
                             double t, int dim, double tail_tol = kDefaultTailTol);

struct CdCheckReport {
    double max_infidelity = 0.0;
    double norm_drift = 0.0;
    std::vector<std::pair<double, double>> samples; // (t, infidelity vs displaced |n>)
};

// Evolves D(alpha0(0))|n> under the counter-diabatic schedule and reports the
// worst instantaneous infidelity against D(alpha0(t))|n> on a uniform grid.
CdCheckReport cd_drive_check(const RampSpec& spec, int n, int dim,
                             const IntegratorOptions& opt = {}, int n_samples = 101);

// ---- experiment helpers (shared by the CLI and the acceptance suite) ----

// Infidelity of the final state against the ideal displaced target after
// evolving |alpha0(0)> under the uncorrected (h0) or corrected (ff) ramp.
double ramp_final_infidelity(const RampSpec& spec, bool corrected, int dim,
                             const IntegratorOptions& opt = {});

// Final infidelity against |omega_i/delta_f> for the scaled-clock schedule.
double ffts_final_infidelity(const ScaledClock& clock, int dim,
                             const IntegratorOptions& opt = {});

// Final infidelity against |omega_i/delta_f> for the linear detuning ramp.
double linear_final_infidelity(double delta_i, double delta_f, double omega_i,
                               double t_final, int dim, const IntegratorOptions& opt = {});

// Largest |beta| visited by the exact coherent trajectory
//   d beta / dt = -i delta(t) beta + i drive(t)
// (fixed-step scan); used to size truncated bases for driven-resonator runs.
double classical_displacement_bound(const std::function<double(double)>& delta,
                                    const std::function<complexd(double)>& drive,
                                    double t_end, complexd beta0);

} // namespace ffd

#include "propagator.hpp"

#include <cmath>
#include <stdexcept>

#include "quad.hpp"

namespace ffd {

HamiltonianSchedule h0_schedule(const RampSpec& spec, int dim) {
    return resonator_hamiltonian(
        [spec](double) { return spec.delta; },
        [spec](double t) { return complexd(sample_ramp(spec, t).omega0, 0.0); }, dim, 0.0,
        spec.t_ramp);
}

HamiltonianSchedule ff_schedule(const RampSpec& spec, int dim, bool with_phase_term) {
    std::function<double(double)> scalar;
    if (with_phase_term) {
        scalar = [spec](double t) {
            const double a_ff = sample_ramp(spec, t).omega_ff / spec.delta;
            return spec.delta * a_ff * a_ff;
        };
    }
    return resonator_hamiltonian(
        [spec](double) { return spec.delta; },
        [spec](double t) { return complexd(sample_ramp(spec, t).omega_ff, 0.0); }, dim,
        0.0, spec.t_ramp, scalar);
}

HamiltonianSchedule cd_schedule(const RampSpec& spec, int dim) {
    return resonator_hamiltonian(
        [spec](double) { return spec.delta; },
        [spec](double t) { return sample_ramp(spec, t).omega_cd; }, dim, 0.0, spec.t_ramp);
}

HamiltonianSchedule ffts_schedule(const ScaledClock& clock, int dim) {
    return resonator_hamiltonian(
        [clock](double t) { return delta_ff_ts(clock, t); },
        [clock](double) { return complexd(clock.omega_i, 0.0); }, dim, 0.0, clock.t_final);
}

HamiltonianSchedule linear_detuning_schedule(double delta_i, double delta_f,
                                             double omega_i, double t_final, int dim) {
    if (!(t_final > 0.0)) {
        throw std::invalid_argument("linear_detuning_schedule: t_final must be > 0");
    }
    return resonator_hamiltonian(
        [=](double t) { return delta_i + (delta_f - delta_i) * t / t_final; },
        [omega_i](double) { return complexd(omega_i, 0.0); }, dim, 0.0, t_final);
}

FockVector analytic_ff_state(const RampSpec& spec, const std::vector<complexd>& c,
                             double t, int dim, double tail_tol) {
    if (c.empty() || static_cast<int>(c.size()) > dim) {
        throw std::invalid_argument("analytic_ff_state: need 1 <= |c| <= dim coefficients");
    }
    double norm2 = 0.0;
    for (const complexd& cn : c) norm2 += std::norm(cn);
    if (std::abs(norm2 - 1.0) > 1e-9) {
        throw std::invalid_argument("analytic_ff_state: coefficients must be normalized");
    }

    const RampSample r = sample_ramp(spec, t);
    const double phi =
        integrate([&spec](double s) { return ff_phase_rate(spec, s); }, 0.0, t,
                  {1e-10, 1e-10});

    Vector rotated = Vector::Zero(dim);
    for (std::size_t n = 0; n < c.size(); ++n) {
        rotated(n) = c[n] * std::exp(complexd(0.0, -spec.delta * t * static_cast<double>(n)));
    }
    const Matrix d = displacement_matrix(r.alpha_tilde, dim, tail_tol);

    FockVector out;
    out.dims = {dim};
    out.amps = std::exp(complexd(0.0, -phi)) * (d * rotated);
    out.tail_mass = std::max(0.0, 1.0 - out.amps.squaredNorm());
    const double nrm = out.amps.norm();
    out.amps /= nrm;
    return out;
}

CdCheckReport cd_drive_check(const RampSpec& spec, int n, int dim,
                             const IntegratorOptions& opt, int n_samples) {
    if (n_samples < 2) {
        throw std::invalid_argument("cd_drive_check: need at least 2 samples");
    }
    const double alpha_start = sample_ramp(spec, 0.0).alpha0;
    const FockVector psi0 = displaced_fock(alpha_start, n, dim);

    std::vector<double> times(n_samples);
    for (int k = 0; k < n_samples; ++k) {
        times[k] = spec.t_ramp * static_cast<double>(k) / (n_samples - 1);
    }
    const EvolutionResult res = evolve(cd_schedule(spec, dim), psi0, opt, times);

    CdCheckReport report;
    report.norm_drift = res.norm_drift;
    report.samples.reserve(res.trajectory.size());
    for (const auto& [tk, amps] : res.trajectory) {
        const FockVector target = displaced_fock(sample_ramp(spec, tk).alpha0, n, dim);
        FockVector state;
        state.dims = {dim};
        state.amps = amps / amps.norm();
        const double infid = infidelity(state, target);
        report.samples.emplace_back(tk, infid);
        report.max_infidelity = std::max(report.max_infidelity, infid);
    }
    return report;
}

double ramp_final_infidelity(const RampSpec& spec, bool corrected, int dim,
                             const IntegratorOptions& opt) {
    const double alpha_start = sample_ramp(spec, 0.0).alpha0;
    const double alpha_end = sample_ramp(spec, spec.t_ramp).alpha0;
    const FockVector psi0 = coherent_state(alpha_start, dim);
    const FockVector target = coherent_state(alpha_end, dim);
    const HamiltonianSchedule h =
        corrected ? ff_schedule(spec, dim) : h0_schedule(spec, dim);
    return infidelity(normalized_copy(evolve(h, psi0, opt).final_state), target);
}

double ffts_final_infidelity(const ScaledClock& clock, int dim,
                             const IntegratorOptions& opt) {
    const FockVector psi0 = coherent_state(clock.omega_i / clock.delta_i, dim);
    const FockVector target = coherent_state(clock.omega_i / clock.delta_f, dim);
    return infidelity(normalized_copy(evolve(ffts_schedule(clock, dim), psi0, opt).final_state),
                      target);
}

double linear_final_infidelity(double delta_i, double delta_f, double omega_i,
                               double t_final, int dim, const IntegratorOptions& opt) {
    const FockVector psi0 = coherent_state(omega_i / delta_i, dim);
    const FockVector target = coherent_state(omega_i / delta_f, dim);
    const HamiltonianSchedule h =
        linear_detuning_schedule(delta_i, delta_f, omega_i, t_final, dim);
    return infidelity(normalized_copy(evolve(h, psi0, opt).final_state), target);
}

double classical_displacement_bound(const std::function<double(double)>& delta,
                                    const std::function<complexd(double)>& drive,
                                    double t_end, complexd beta0) {
    const int steps = 4000;
    const double h = t_end / steps;
    const complexd iu(0.0, 1.0);
    auto rhs = [&](double t, complexd b) { return -iu * delta(t) * b + iu * drive(t); };
    complexd beta = beta0;
    double mx = std::abs(beta);
    for (int k = 0; k < steps; ++k) {
        const double t = k * h;
        const complexd k1 = rhs(t, beta);
        const complexd k2 = rhs(t + 0.5 * h, beta + 0.5 * h * k1);
        const complexd k3 = rhs(t + 0.5 * h, beta + 0.5 * h * k2);
        const complexd k4 = rhs(t + h, beta + h * k3);
        beta += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        mx = std::max(mx, std::abs(beta));
    }
    return mx;
}

} // namespace ffd

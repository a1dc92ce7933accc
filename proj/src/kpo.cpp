#include "kpo.hpp"

#include <cmath>
#include <exception>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "quad.hpp"
#include "units.hpp"

namespace ffd {

double KpoSystemSpec::alpha1() const { return std::sqrt(pump1 / kerr1); }
double KpoSystemSpec::alpha2() const { return std::sqrt(pump2 / kerr2); }
double KpoSystemSpec::drive_sum() const { return g1c * alpha1() + g2c * alpha2(); }

KpoSystemSpec KpoSystemSpec::from_mhz(double kerr1_mhz, double kerr2_mhz,
                                      double pump1_mhz, double pump2_mhz, double g1c_mhz,
                                      double g2c_mhz, double g12_mhz, double delta_i_mhz,
                                      double delta_f_mhz, std::array<int, 3> dims) {
    KpoSystemSpec s;
    s.kerr1 = angular_from_mhz(kerr1_mhz);
    s.kerr2 = angular_from_mhz(kerr2_mhz);
    s.pump1 = angular_from_mhz(pump1_mhz);
    s.pump2 = angular_from_mhz(pump2_mhz);
    s.g1c = angular_from_mhz(g1c_mhz);
    s.g2c = angular_from_mhz(g2c_mhz);
    s.g12 = angular_from_mhz(g12_mhz);
    s.delta_i = angular_from_mhz(delta_i_mhz);
    s.delta_f = angular_from_mhz(delta_f_mhz);
    s.dims = dims;
    s.validate();
    return s;
}

void KpoSystemSpec::validate() const {
    if (!(kerr1 > 0.0) || !(kerr2 > 0.0)) {
        throw std::invalid_argument("kpo: Kerr coefficients must be > 0");
    }
    if (pump1 < 0.0 || pump2 < 0.0) {
        throw std::invalid_argument("kpo: pump amplitudes must be >= 0");
    }
    if (delta_i == 0.0 || delta_f == 0.0 || delta_i * delta_f < 0.0) {
        throw std::invalid_argument("kpo: detuning endpoints must be nonzero, same sign");
    }
    const double b1 = g1c * alpha1();
    const double b2 = g2c * alpha2();
    const double scale = std::max(std::abs(b1), std::abs(b2));
    if (scale == 0.0) {
        throw std::invalid_argument("kpo: zero effective drive (g_jc alpha_j all zero)");
    }
    if (std::abs(b1 - b2) > 1e-12 * scale) {
        throw std::invalid_argument(
            "kpo: balance condition g1c*alpha1 == g2c*alpha2 violated");
    }
    for (int d : dims) {
        if (d < 2) {
            throw std::invalid_argument("kpo: every mode needs dim >= 2");
        }
    }
}

double kpo_detuning(const KpoSystemSpec& spec, int j, double delta_c) {
    if (delta_c == 0.0) {
        throw std::domain_error("kpo_detuning: delta_c must be nonzero");
    }
    if (j != 1 && j != 2) {
        throw std::invalid_argument("kpo_detuning: j must be 1 or 2");
    }
    const double g = j == 1 ? spec.g1c : spec.g2c;
    return g * g / delta_c;
}

std::pair<double, double> coupler_amplitude(const KpoSystemSpec& spec, double delta_c) {
    if (delta_c == 0.0) {
        throw std::domain_error("coupler_amplitude: delta_c must be nonzero");
    }
    const double b1 = spec.g1c * spec.alpha1();
    const double b2 = spec.g2c * spec.alpha2();
    return {(b1 + b2) / delta_c, (b1 - b2) / delta_c};
}

double gate_boundary_detuning(const KpoSystemSpec& spec) {
    if (spec.g12 == 0.0) {
        throw std::domain_error("gate_boundary_detuning: g12 must be nonzero");
    }
    return spec.g1c * spec.g2c / spec.g12;
}

HamiltonianSchedule full_hamiltonian(const KpoSystemSpec& spec,
                                     std::function<double(double)> delta_c,
                                     std::function<double(int, double)> delta_j,
                                     double t_begin, double t_end) {
    spec.validate();
    const int d1 = spec.dims[0];
    const int d2 = spec.dims[1];
    const int dc = spec.dims[2];

    HamiltonianSchedule h;
    h.dims = {d1, d2, dc};
    h.t_begin = t_begin;
    h.t_end = t_end;

    auto constant = [](double v) {
        return [v](double) { return complexd(v, 0.0); };
    };

    // Kerr, pump and detuning of each KPO.
    const double kerr[2] = {spec.kerr1, spec.kerr2};
    const double pump[2] = {spec.pump1, spec.pump2};
    const int dim_j[2] = {d1, d2};
    for (int j = 0; j < 2; ++j) {
        h.terms.push_back({constant(-0.5 * kerr[j]), {f_kerr(j, dim_j[j])}});
        h.terms.push_back({constant(0.5 * pump[j]), {f_raise2(j, dim_j[j])}});
        h.terms.push_back({constant(0.5 * pump[j]), {f_lower2(j, dim_j[j])}});
        h.terms.push_back(
            {[delta_j, j](double t) { return complexd(delta_j(j + 1, t), 0.0); },
             {f_number(j, dim_j[j])}});
    }
    // Coupler detuning.
    h.terms.push_back(
        {[delta_c](double t) { return complexd(delta_c(t), 0.0); }, {f_number(2, dc)}});
    // Beam-splitter couplings.
    const double gjc[2] = {spec.g1c, spec.g2c};
    for (int j = 0; j < 2; ++j) {
        h.terms.push_back(
            {constant(gjc[j]), {f_raise(j, dim_j[j]), f_lower(2, dc)}});
        h.terms.push_back(
            {constant(gjc[j]), {f_lower(j, dim_j[j]), f_raise(2, dc)}});
    }
    h.terms.push_back({constant(spec.g12), {f_raise(0, d1), f_lower(1, d2)}});
    h.terms.push_back({constant(spec.g12), {f_lower(0, d1), f_raise(1, d2)}});
    return h;
}

HamiltonianSchedule slaved_full_hamiltonian(const KpoSystemSpec& spec,
                                            std::function<double(double)> delta_c,
                                            double t_begin, double t_end) {
    return full_hamiltonian(
        spec, delta_c,
        [spec, delta_c](int j, double t) { return kpo_detuning(spec, j, delta_c(t)); },
        t_begin, t_end);
}

FockVector logical_state(const KpoSystemSpec& spec, int k, int l) {
    if ((k != 0 && k != 1) || (l != 0 && l != 1)) {
        throw std::invalid_argument("logical_state: k and l must be 0 or 1");
    }
    spec.validate();
    const double s1 = 1.0 - 2.0 * k;
    const double s2 = 1.0 - 2.0 * l;
    // Coupler equilibrium matching the KPO signs; -alpha_c_plus for (0,0),
    // +alpha_c_plus for (1,1), zero for the unbalanced pair.
    const double coupler_amp =
        -(spec.g1c * s1 * spec.alpha1() + spec.g2c * s2 * spec.alpha2()) / spec.delta_i;
    return tensor({coherent_state(s1 * spec.alpha1(), spec.dims[0], spec.state_tail_tol),
                   coherent_state(s2 * spec.alpha2(), spec.dims[1], spec.state_tail_tol),
                   coherent_state(coupler_amp, spec.dims[2], spec.state_tail_tol)});
}

double CouplerSchedule::delta_c(double t) const {
    const double slack = 1e-9 * t_gate;
    if (t < -slack || t > t_gate + slack) {
        throw std::domain_error("CouplerSchedule: t outside [0, t_gate]");
    }
    const double half = 0.5 * t_gate;
    const double tt = t <= half ? t : t_gate - t;
    return delta_ff_ts(clock, std::clamp(tt, 0.0, clock.t_final));
}

CouplerSchedule coupler_schedule(const KpoSystemSpec& spec, double t_ramp) {
    spec.validate();
    CouplerSchedule s;
    s.clock = make_clock(spec.delta_i, spec.delta_f, spec.drive_sum(), t_ramp);
    s.t_gate = 2.0 * s.clock.t_final;
    return s;
}

double zz_phase_rate(const KpoSystemSpec& spec, double delta_c) {
    return 2.0 * spec.alpha1() * spec.alpha2() * (spec.g12 - spec.g1c * spec.g2c / delta_c);
}

double mean_energy_offset(const KpoSystemSpec& spec) {
    const double a1 = spec.alpha1();
    const double a2 = spec.alpha2();
    return 0.5 * (spec.kerr1 * a1 * a1 * a1 * a1 + spec.kerr2 * a2 * a2 * a2 * a2);
}

EffectiveCoupler effective_coupler_hamiltonian(const KpoSystemSpec& spec, int k, int l,
                                               std::function<double(double)> delta_c,
                                               double t_begin, double t_end) {
    if ((k != 0 && k != 1) || (l != 0 && l != 1)) {
        throw std::invalid_argument("effective_coupler_hamiltonian: k, l must be 0 or 1");
    }
    spec.validate();
    const int dim = spec.dims[2];
    const double e1_sign = k == l ? 1.0 : -1.0;
    const double e0 = mean_energy_offset(spec);
    auto offset = [spec, e1_sign, e0, delta_c](double t) {
        return e0 + e1_sign * zz_phase_rate(spec, delta_c(t));
    };

    EffectiveCoupler out;
    out.energy_offset = offset;
    if (k == l) {
        // Displaced oscillator: delta_c [a^dag -+ alpha_c][a -+ alpha_c] with
        // alpha_c(t) = drive_sum / delta_c(t); sign - for (1,1), + for (0,0).
        const double drive = (k == 1 ? 1.0 : -1.0) * spec.drive_sum();
        const double omega_bar = spec.drive_sum();
        out.schedule = resonator_hamiltonian(
            delta_c, [drive](double) { return complexd(drive, 0.0); }, dim, t_begin, t_end,
            [omega_bar, delta_c, offset](double t) {
                return omega_bar * omega_bar / delta_c(t) + offset(t);
            });
    } else {
        out.schedule = resonator_hamiltonian(
            delta_c, [](double) { return complexd(0.0, 0.0); }, dim, t_begin, t_end,
            offset);
    }
    return out;
}

GateAngles gate_angles(const KpoSystemSpec& spec, const CouplerSchedule& schedule) {
    GateAngles angles;
    const QuadOptions qopt{1e-10, 1e-10, 48};
    const double e1_int = integrate(
        [&](double t) { return zz_phase_rate(spec, schedule.delta_c(t)); }, 0.0,
        schedule.t_gate, qopt);
    const double lambda_mid = lambda_of(schedule.clock, schedule.clock.t_final);
    angles.b_integral = integrate(
        [&](double s) { return ff_phase_rate(schedule.clock.ramp, s); }, 0.0, lambda_mid,
        qopt);
    angles.theta_ad = 2.0 * e1_int;
    angles.theta_ff = angles.theta_ad + 2.0 * angles.b_integral;
    angles.theta_ff_global =
        mean_energy_offset(spec) * schedule.t_gate + angles.b_integral;
    return angles;
}

std::vector<SweepPoint> run_displacement_experiment(const KpoSystemSpec& spec,
                                                    const std::vector<double>& t_f_values,
                                                    ScheduleKind kind,
                                                    const IntegratorOptions& opt) {
    spec.validate();
    for (double tf : t_f_values) {
        if (!(tf > 0.0)) {
            throw std::invalid_argument("run_displacement_experiment: t_f must be > 0");
        }
    }
    const int npoints = static_cast<int>(t_f_values.size());
    std::vector<SweepPoint> out(npoints);
    std::exception_ptr failure;

    const FockVector psi0 = logical_state(spec, 1, 1);
    const FockVector target =
        tensor({coherent_state(-spec.alpha1(), spec.dims[0], spec.state_tail_tol),
                coherent_state(-spec.alpha2(), spec.dims[1], spec.state_tail_tol),
                coherent_state(spec.drive_sum() / spec.delta_f, spec.dims[2],
                               spec.state_tail_tol)});

#ifdef _OPENMP
    const int nthreads = std::min(kernels::max_threads(), npoints);
#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(1, nthreads))
#endif
    for (int i = 0; i < npoints; ++i) {
        try {
            const double t_f = t_f_values[i];
            std::function<double(double)> delta_c;
            if (kind == ScheduleKind::ff_ts) {
                const double ratio = spec.delta_i / spec.delta_f;
                const double t_ramp = 2.0 * t_f / (ratio + 1.0);
                const ScaledClock clock =
                    make_clock(spec.delta_i, spec.delta_f, spec.drive_sum(), t_ramp);
                delta_c = [clock](double t) { return delta_ff_ts(clock, t); };
            } else {
                const double di = spec.delta_i;
                const double df = spec.delta_f;
                delta_c = [di, df, t_f](double t) { return di + (df - di) * t / t_f; };
            }
            const HamiltonianSchedule h = slaved_full_hamiltonian(spec, delta_c, 0.0, t_f);
            const EvolutionResult res = evolve(h, psi0, opt);
            out[i] = {t_f, infidelity(normalized_copy(res.final_state), target)};
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
            {
                if (!failure) failure = std::current_exception();
            }
        }
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

} // namespace ffd

#include "pulses.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ffd {

SmoothstepValues smoothstep(double s) {
    if (s < 0.0 || s > 1.0) {
        throw std::domain_error("smoothstep: s outside [0, 1]");
    }
    const double s2 = s * s;
    const double s3 = s2 * s;
    const double s4 = s3 * s;
    const double s5 = s4 * s;
    const double s6 = s5 * s;
    SmoothstepValues v;
    v.g = 10.0 * s3 - 15.0 * s4 + 6.0 * s5;
    v.dg = 30.0 * s2 - 60.0 * s3 + 30.0 * s4;
    v.d2g = 60.0 * s - 180.0 * s2 + 120.0 * s3;
    v.w = s - 3.0 * s2 + 2.0 * s3;
    v.G = 2.5 * s4 - 3.0 * s5 + s6;
    v.W = 0.5 * s2 - s3 + 0.5 * s4;
    return v;
}

RampSpec RampSpec::from_mhz(double omega_i_mhz, double omega_f_mhz,
                            double t_ramp_ns, double delta_mhz) {
    RampSpec spec;
    spec.omega_i = angular_from_mhz(omega_i_mhz);
    spec.omega_f = angular_from_mhz(omega_f_mhz);
    spec.t_ramp = t_ramp_ns;
    spec.delta = angular_from_mhz(delta_mhz);
    return spec;
}

namespace {

void check_spec(const RampSpec& spec) {
    if (!(spec.t_ramp > 0.0)) {
        throw std::invalid_argument("ramp: t_ramp must be > 0");
    }
    if (spec.delta == 0.0) {
        throw std::invalid_argument("ramp: delta must be nonzero");
    }
}

} // namespace

RampSample sample_ramp(const RampSpec& spec, double t) {
    check_spec(spec);
    // Tolerate endpoint roundoff from callers that step up to t_ramp.
    const double slack = 1e-9 * spec.t_ramp;
    if (t < -slack || t > spec.t_ramp + slack) {
        throw std::domain_error("sample_ramp: t outside [0, t_ramp]");
    }
    const double s = std::clamp(t / spec.t_ramp, 0.0, 1.0);
    const SmoothstepValues v = smoothstep(s);

    const double span = spec.omega_f - spec.omega_i;
    const double inv_T = 1.0 / spec.t_ramp;
    const double d = spec.delta;

    RampSample r;
    r.t = t;
    r.omega0 = spec.omega_i + span * v.g;
    r.omega0_dot = span * v.dg * inv_T;
    r.omega0_ddot = span * v.d2g * inv_T * inv_T;
    r.omega_ff = r.omega0 + r.omega0_ddot / (d * d);
    r.alpha0 = r.omega0 / d;
    r.alpha0_dot_over_delta = r.omega0_dot / (d * d);
    r.alpha_tilde = complexd(r.alpha0, r.alpha0_dot_over_delta);
    r.omega_cd = complexd(r.omega0, -r.omega0_dot / d);
    return r;
}

BoundaryReport verify_boundaries(const RampSpec& spec) {
    const RampSample a = sample_ramp(spec, 0.0);
    const RampSample b = sample_ramp(spec, spec.t_ramp);
    BoundaryReport rep;
    rep.omega0_start = a.omega0;
    rep.omega0_end = b.omega0;
    rep.omega0_dot_start = a.omega0_dot;
    rep.omega0_dot_end = b.omega0_dot;
    rep.omega0_ddot_start = a.omega0_ddot;
    rep.omega0_ddot_end = b.omega0_ddot;
    rep.derivatives_vanish = rep.omega0_dot_start == 0.0 &&
                             rep.omega0_dot_end == 0.0 &&
                             rep.omega0_ddot_start == 0.0 &&
                             rep.omega0_ddot_end == 0.0;
    return rep;
}

double ff_phase_rate(const RampSpec& spec, double t) {
    const RampSample r = sample_ramp(spec, t);
    const double alpha_ff = r.omega_ff / spec.delta;
    const double alpha0_ddot = r.omega0_ddot / spec.delta;
    return alpha_ff * alpha0_ddot / spec.delta;
}

double max_tilde_displacement(const RampSpec& spec) {
    check_spec(spec);
    double m = 0.0;
    const int n = 500;
    for (int k = 0; k <= n; ++k) {
        const double t = spec.t_ramp * static_cast<double>(k) / n;
        m = std::max(m, std::abs(sample_ramp(spec, t).alpha_tilde));
    }
    return m;
}

int default_dim_for(double alpha_max) {
    const double a = std::abs(alpha_max);
    return static_cast<int>(std::ceil(a * a + 8.0 * a + 12.0));
}

} // namespace ffd

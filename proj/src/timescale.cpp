#include "timescale.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace ffd {

namespace {

double omega_ff_at(const ScaledClock& clock, double lambda) {
    return sample_ramp(clock.ramp, lambda).omega_ff;
}

} // namespace

ScaledClock make_clock(double delta_i, double delta_f, double omega_i,
                       double t_ramp, double solver_tol) {
    if (delta_i == 0.0 || delta_f == 0.0 || delta_i * delta_f < 0.0) {
        throw std::domain_error("make_clock: delta_i and delta_f must be nonzero and share a sign");
    }
    if (omega_i == 0.0) {
        throw std::domain_error("make_clock: omega_i must be nonzero");
    }
    if (!(t_ramp > 0.0)) {
        throw std::domain_error("make_clock: t_ramp must be > 0");
    }
    if (!(solver_tol > 0.0)) {
        throw std::domain_error("make_clock: solver_tol must be > 0");
    }

    ScaledClock clock;
    clock.delta_i = delta_i;
    clock.delta_f = delta_f;
    clock.omega_i = omega_i;
    clock.t_ramp = t_ramp;
    clock.solver_tol = solver_tol;

    const double ratio = delta_i / delta_f;
    clock.t_final = 0.5 * (ratio + 1.0) * t_ramp;

    clock.ramp.omega_i = omega_i;
    clock.ramp.omega_f = omega_i * ratio;
    clock.ramp.t_ramp = t_ramp;
    clock.ramp.delta = delta_i;

    // The drive must not cross zero anywhere along the ramp; with it pinned
    // at the initial value, a crossing means an unbounded detuning.
    const int n = 1000;
    const double sgn = omega_i > 0.0 ? 1.0 : -1.0;
    double prev_lambda = 0.0;
    double prev_val = sgn * omega_ff_at(clock, 0.0);
    for (int k = 1; k <= n; ++k) {
        const double lambda = t_ramp * static_cast<double>(k) / n;
        const double val = sgn * omega_ff_at(clock, lambda);
        if (val <= 0.0 || prev_val <= 0.0) {
            // Bisect to localize the first crossing for the error message.
            double lo = prev_lambda;
            double hi = lambda;
            for (int it = 0; it < 60 && hi - lo > 1e-12 * t_ramp; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (sgn * omega_ff_at(clock, mid) > 0.0) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            throw infeasible_schedule_error(
                "make_clock: corrected drive crosses zero near scaled time " +
                std::to_string(hi) + " ns; the fixed-amplitude schedule does not exist");
        }
        prev_lambda = lambda;
        prev_val = val;
    }
    return clock;
}

double time_of_lambda(const ScaledClock& clock, double lambda) {
    const double slack = 1e-9 * clock.t_ramp;
    if (lambda < -slack || lambda > clock.t_ramp + slack) {
        throw std::domain_error("time_of_lambda: lambda outside [0, t_ramp]");
    }
    const double s = std::clamp(lambda / clock.t_ramp, 0.0, 1.0);
    const SmoothstepValues v = smoothstep(s);
    const double ratio = clock.delta_i / clock.delta_f;
    const double di_T = clock.delta_i * clock.t_ramp;
    // G and W are returned per unit t_ramp.
    return lambda + (ratio - 1.0) * clock.t_ramp * (v.G + 60.0 * v.W / (di_T * di_T));
}

double lambda_of(const ScaledClock& clock, double t) {
    const double slack = 1e-9 * clock.t_final;
    if (t < -slack || t > clock.t_final + slack) {
        throw std::domain_error("lambda_of: t outside [0, t_final]");
    }
    t = std::clamp(t, 0.0, clock.t_final);
    if (t == 0.0) return 0.0;

    const double resid_tol = clock.solver_tol * clock.t_final;
    double lo = 0.0;
    double hi = clock.t_ramp;
    double x = clock.t_ramp * (t / clock.t_final); // linear first guess
    double fx = time_of_lambda(clock, x) - t;

    for (int it = 0; it < 200; ++it) {
        if (std::abs(fx) <= resid_tol) {
            return x;
        }
        if (fx > 0.0) {
            hi = x;
        } else {
            lo = x;
        }
        // Newton step with the exact derivative dt/dLambda = omega_ff / omega_i;
        // fall back to bisection when it leaves the bracket.
        const double slope = omega_ff_at(clock, x) / clock.omega_i;
        double next = slope > 0.0 ? x - fx / slope : std::numeric_limits<double>::quiet_NaN();
        if (!(next > lo && next < hi)) {
            next = 0.5 * (lo + hi);
        }
        if (hi - lo <= std::numeric_limits<double>::epsilon() * clock.t_ramp) {
            break;
        }
        x = next;
        fx = time_of_lambda(clock, x) - t;
    }
    if (std::abs(fx) > resid_tol) {
        throw accuracy_error("lambda_of: clock equation failed to converge (residual " +
                             std::to_string(std::abs(fx)) + " ns)");
    }
    return x;
}

double delta_ff_ts(const ScaledClock& clock, double t) {
    return clock.delta_i * scaling_factor(clock, t);
}

double scaling_factor(const ScaledClock& clock, double t) {
    const double lambda = lambda_of(clock, t);
    return clock.omega_i / omega_ff_at(clock, lambda);
}

} // namespace ffd

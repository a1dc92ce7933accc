#include "integrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace ffd {

namespace {

// Dormand–Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5.0;
constexpr double c3 = 3.0 / 10.0;
constexpr double c4 = 4.0 / 5.0;
constexpr double c5 = 8.0 / 9.0;

constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                 a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
// Difference between the 5th- and 4th-order weights.
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

double error_norm(const Vector& err, const Vector& y0, const Vector& y1, double atol,
                  double rtol) {
    const Eigen::Index n = err.size();
    double acc = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double sc = atol + rtol * std::max(std::abs(y0(i)), std::abs(y1(i)));
        const double e = std::abs(err(i)) / sc;
        acc += e * e;
    }
    return std::sqrt(acc / static_cast<double>(n));
}

} // namespace

EvolutionResult evolve(const HamiltonianSchedule& schedule, const FockVector& psi0,
                       const IntegratorOptions& opt,
                       const std::vector<double>& sample_times) {
    if (psi0.dims != schedule.dims) {
        throw std::invalid_argument("evolve: state dims do not match schedule dims");
    }
    const double t0 = schedule.t_begin;
    const double t1 = schedule.t_end;
    if (!(t1 > t0)) {
        throw std::invalid_argument("evolve: empty time span");
    }
    for (std::size_t k = 0; k < sample_times.size(); ++k) {
        const bool ordered = k == 0 || sample_times[k] > sample_times[k - 1];
        if (!ordered || sample_times[k] < t0 - 1e-12 || sample_times[k] > t1 + 1e-12) {
            throw std::invalid_argument("evolve: sample_times must be sorted within the span");
        }
    }

    const ScheduleApplier applier(schedule);
    const bool par = opt.parallel_kernel;
    const double atol = opt.abs_tol;
    const double rtol = opt.rel_tol;
    const double span = t1 - t0;

    EvolutionResult result;
    Vector y = psi0.amps;
    double t = t0;

    Vector k1(y.size()), k2(y.size()), k3(y.size()), k4(y.size()), k5(y.size()),
        k6(y.size()), k7(y.size());
    Vector ytmp(y.size()), ynew(y.size()), yerr(y.size());

    applier.apply_rhs(t, y, k1, par);

    // Automatic initial step (Hairer's hinit, order 5).
    double h;
    {
        double d0 = 0.0, d1 = 0.0;
        for (Eigen::Index i = 0; i < y.size(); ++i) {
            const double sc = atol + rtol * std::abs(y(i));
            d0 += std::norm(y(i) / sc);
            d1 += std::norm(k1(i) / sc);
        }
        d0 = std::sqrt(d0 / y.size());
        d1 = std::sqrt(d1 / y.size());
        double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 : 0.01 * d0 / d1;
        h0 = std::min(h0, span);
        ytmp = y + h0 * k1;
        applier.apply_rhs(t + h0, ytmp, k2, par);
        double d2 = 0.0;
        for (Eigen::Index i = 0; i < y.size(); ++i) {
            const double sc = atol + rtol * std::abs(y(i));
            d2 += std::norm((k2(i) - k1(i)) / sc);
        }
        d2 = std::sqrt(d2 / y.size()) / h0;
        const double dmax = std::max(d1, d2);
        const double h1 =
            dmax <= 1e-15 ? std::max(1e-6, h0 * 1e-3) : std::pow(0.01 / dmax, 1.0 / 6.0);
        h = std::min({100.0 * h0, h1, span});
    }

    std::size_t next_sample = 0;
    auto record_if_sampled = [&](double tc, const Vector& yc) {
        while (next_sample < sample_times.size() &&
               std::abs(sample_times[next_sample] - tc) <= 1e-9 * std::max(1.0, std::abs(tc))) {
            result.trajectory.emplace_back(sample_times[next_sample], yc);
            ++next_sample;
        }
    };
    record_if_sampled(t, y);

    const double eps = std::numeric_limits<double>::epsilon();
    bool just_rejected = false;

    while (t < t1) {
        if (result.steps.accepted + result.steps.rejected >= opt.max_steps) {
            throw accuracy_error("evolve: step budget exhausted");
        }
        // Land exactly on the next sample time and on the final time.
        double t_target = t1;
        if (next_sample < sample_times.size()) {
            t_target = std::min(t_target, sample_times[next_sample]);
        }
        if (t + h >= t_target) {
            h = t_target - t;
        }
        if (h <= 16.0 * eps * std::max(std::abs(t), span)) {
            throw accuracy_error("evolve: step size underflow at t = " + std::to_string(t) +
                                 " ns (stiffness or unreachable tolerance)");
        }

        ytmp = y + h * (a21 * k1);
        applier.apply_rhs(t + c2 * h, ytmp, k2, par);
        ytmp = y + h * (a31 * k1 + a32 * k2);
        applier.apply_rhs(t + c3 * h, ytmp, k3, par);
        ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
        applier.apply_rhs(t + c4 * h, ytmp, k4, par);
        ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        applier.apply_rhs(t + c5 * h, ytmp, k5, par);
        ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        applier.apply_rhs(t + h, ytmp, k6, par);
        ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        applier.apply_rhs(t + h, ynew, k7, par);
        yerr = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

        const double err = error_norm(yerr, y, ynew, atol, rtol);
        if (err <= 1.0) {
            t = t + h;
            y.swap(ynew);
            k1.swap(k7); // first-same-as-last
            ++result.steps.accepted;
            result.norm_drift = std::max(result.norm_drift, std::abs(y.norm() - 1.0));
            record_if_sampled(t, y);
            const double facmax = just_rejected ? 1.0 : 5.0;
            const double fac = err == 0.0 ? facmax
                                          : std::clamp(0.9 * std::pow(err, -0.2), 0.2, facmax);
            h = std::min(h * fac, span);
            just_rejected = false;
        } else {
            ++result.steps.rejected;
            h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 1.0);
            just_rejected = true;
        }
    }

    if (result.norm_drift > 1e-6) {
        throw accuracy_error("evolve: norm drift " + std::to_string(result.norm_drift) +
                             " exceeds 1e-6; tighten tolerances");
    }

    result.final_state.dims = psi0.dims;
    result.final_state.amps = std::move(y);
    result.final_state.tail_mass = psi0.tail_mass;
    return result;
}

} // namespace ffd

// bench_apply.cpp — timings for the schedule-apply kernels: the plain serial
// reference, the compiled kernel with one thread, and the OpenMP path.
// Representative sizes: the three-mode system at default and doubled dims,
// and a large single mode.

#include <chrono>
#include <cstdio>
#include <functional>

#include "kernels.hpp"
#include "kpo.hpp"
#include "propagator.hpp"

using namespace ffd;

namespace {

double time_ms(const std::function<void()>& fn, int reps) {
    fn(); // warm up
    const auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void bench_case(const char* name, const HamiltonianSchedule& schedule, int reps) {
    const ScheduleApplier applier(schedule);
    const int n = applier.total_dim();
    Vector x = Vector::Random(n);
    x /= x.norm();
    Vector y(n);

    const double t_ref =
        time_ms([&] { reference_apply(schedule, 0.5, x, y); }, std::max(1, reps / 8));
    kernels::set_max_threads(1);
    const double t_k1 = time_ms([&] { applier.apply(0.5, x, y); }, reps);
    kernels::set_max_threads(0);
    const double t_kp = time_ms([&] { applier.apply(0.5, x, y); }, reps);

    std::printf("%-28s n=%7d  reference %9.3f ms  kernel(1T) %9.3f ms  "
                "kernel(omp) %9.3f ms  speedup %.2fx\n",
                name, n, t_ref, t_k1, t_kp, t_ref / t_kp);
}

} // namespace

int main() {
    std::printf("threads available: %d\n", kernels::max_threads());

    const KpoSystemSpec spec =
        KpoSystemSpec::from_mhz(2, 2, 8, 8, 2, 2, 0.02, 200, 20, {20, 20, 12});
    auto delta_c = [&spec](double) { return spec.delta_i; };
    bench_case("three-mode 20x20x12",
               slaved_full_hamiltonian(spec, delta_c, 0.0, 1.0), 200);

    KpoSystemSpec doubled = spec;
    doubled.dims = {40, 40, 24};
    bench_case("three-mode 40x40x24",
               slaved_full_hamiltonian(doubled, delta_c, 0.0, 1.0), 50);

    const RampSpec ramp = RampSpec::from_mhz(0, 120, 20, 30);
    bench_case("single mode dim 4096", ff_schedule(ramp, 4096), 200);

    // One full propagation as an end-to-end figure.
    kernels::set_max_threads(0);
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<SweepPoint> pts =
        run_displacement_experiment(spec, {22.0}, ScheduleKind::ff_ts, {1e-9, 1e-12});
    const auto t1 = std::chrono::steady_clock::now();
    std::printf("three-mode evolve t_f=22 ns: %.2f s (infidelity %.3e)\n",
                std::chrono::duration<double>(t1 - t0).count(), pts[0].infid);
    return 0;
}

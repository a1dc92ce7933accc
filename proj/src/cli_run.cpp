#include "cli_run.hpp"

#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>

#include <json.hpp>

#include "kpo.hpp"
#include "propagator.hpp"
#include "version.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ffd {

using nlohmann::json;

std::string format_g17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {

json base_meta(const ExperimentConfig& cfg) {
    json m;
    m["tool"] = kToolName;
    m["version"] = kToolVersion;
    m["experiment"] = kind_name(cfg.kind);
    m["tolerances"] = {{"rel_tol", cfg.rel_tol}, {"abs_tol", cfg.abs_tol}};
    m["jobs"] = cfg.jobs;
    return m;
}

IntegratorOptions integrator_options(const ExperimentConfig& cfg) {
    IntegratorOptions opt;
    opt.rel_tol = cfg.rel_tol;
    opt.abs_tol = cfg.abs_tol;
    return opt;
}

int sized_dim(double alpha_max, int override_dim) {
    return override_dim > 0 ? override_dim : default_dim_for(alpha_max);
}

template <typename Fn>
void parallel_indexed(int n, int jobs, Fn&& body) {
    std::exception_ptr failure;
#ifdef _OPENMP
    const int limit = jobs > 0 ? jobs : kernels::max_threads();
    const int nthreads = std::max(1, std::min(limit, n));
#pragma omp parallel for schedule(dynamic, 1) num_threads(nthreads)
#endif
    for (int i = 0; i < n; ++i) {
        try {
            body(i);
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
}

RunResult run_ramp(const ExperimentConfig& cfg) {
    const RampSpec spec =
        RampSpec::from_mhz(cfg.omega_i_mhz, cfg.omega_f_mhz, cfg.t_ramp_ns, cfg.delta_mhz);
    std::string csv = "t_ns,alpha0,alpha0_dot_over_delta,alpha0_ddot_over_delta2,"
                      "alpha_ff,omega0_mhz,omega_ff_mhz\n";
    for (int k = 0; k < cfg.samples; ++k) {
        const double t = spec.t_ramp * static_cast<double>(k) / (cfg.samples - 1);
        const RampSample r = sample_ramp(spec, t);
        const double d = spec.delta;
        csv += format_g17(t) + ',' + format_g17(r.alpha0) + ',' +
               format_g17(r.alpha0_dot_over_delta) + ',' +
               format_g17(r.omega0_ddot / (d * d * d)) + ',' +
               format_g17(r.omega_ff / d) + ',' + format_g17(mhz_from_angular(r.omega0)) +
               ',' + format_g17(mhz_from_angular(r.omega_ff)) + '\n';
    }
    json meta = base_meta(cfg);
    meta["parameters"] = {{"delta_mhz", cfg.delta_mhz},
                          {"omega_i_mhz", cfg.omega_i_mhz},
                          {"omega_f_mhz", cfg.omega_f_mhz},
                          {"t_ramp_ns", cfg.t_ramp_ns},
                          {"samples", cfg.samples}};
    return {std::move(csv), meta.dump(2) + "\n"};
}

RunResult run_ff_resonator(const ExperimentConfig& cfg) {
    const IntegratorOptions opt = integrator_options(cfg);
    const int n = static_cast<int>(cfg.t_ramp_ns_values.size());
    std::vector<double> infid_h0(n), infid_ff(n);
    std::vector<int> dims(n);
    parallel_indexed(n, cfg.jobs, [&](int i) {
        const RampSpec spec = RampSpec::from_mhz(cfg.omega_i_mhz, cfg.omega_f_mhz,
                                                 cfg.t_ramp_ns_values[i], cfg.delta_mhz);
        const double bound_ff = max_tilde_displacement(spec);
        const double bound_h0 = classical_displacement_bound(
            [&spec](double) { return spec.delta; },
            [&spec](double t) { return complexd(sample_ramp(spec, t).omega0, 0.0); },
            spec.t_ramp, complexd(sample_ramp(spec, 0.0).alpha0, 0.0));
        const int dim = sized_dim(std::max(bound_ff, bound_h0), cfg.dim);
        dims[i] = dim;
        infid_h0[i] = ramp_final_infidelity(spec, false, dim, opt);
        infid_ff[i] = ramp_final_infidelity(spec, true, dim, opt);
    });
    std::string csv = "t_ramp_ns,hamiltonian,infidelity\n";
    for (int i = 0; i < n; ++i) {
        csv += format_g17(cfg.t_ramp_ns_values[i]) + ",h0," + format_g17(infid_h0[i]) + '\n';
        csv += format_g17(cfg.t_ramp_ns_values[i]) + ",ff," + format_g17(infid_ff[i]) + '\n';
    }
    json meta = base_meta(cfg);
    meta["parameters"] = {{"delta_mhz", cfg.delta_mhz},
                          {"omega_i_mhz", cfg.omega_i_mhz},
                          {"omega_f_mhz", cfg.omega_f_mhz},
                          {"t_ramp_ns_values", cfg.t_ramp_ns_values}};
    meta["dims"] = dims;
    return {std::move(csv), meta.dump(2) + "\n"};
}

RunResult run_lin_detuning(const ExperimentConfig& cfg) {
    const IntegratorOptions opt = integrator_options(cfg);
    const double di = angular_from_mhz(cfg.delta_i_mhz);
    const double df = angular_from_mhz(cfg.delta_f_mhz);
    const double om = angular_from_mhz(cfg.omega_i_mhz);
    if (di == 0.0 || df == 0.0) {
        throw config_error("lin-detuning: detunings must be nonzero");
    }
    const int n = static_cast<int>(cfg.t_final_ns_values.size());
    std::vector<double> infid(n);
    std::vector<int> dims(n);
    parallel_indexed(n, cfg.jobs, [&](int i) {
        const double tf = cfg.t_final_ns_values[i];
        const double bound = classical_displacement_bound(
            [&](double t) { return di + (df - di) * t / tf; },
            [om](double) { return complexd(om, 0.0); }, tf, complexd(om / di, 0.0));
        const int dim = sized_dim(std::max(bound, std::abs(om / df)), cfg.dim);
        dims[i] = dim;
        infid[i] = linear_final_infidelity(di, df, om, tf, dim, opt);
    });
    std::string csv = "t_f_ns,infidelity\n";
    for (int i = 0; i < n; ++i) {
        csv += format_g17(cfg.t_final_ns_values[i]) + ',' + format_g17(infid[i]) + '\n';
    }
    json meta = base_meta(cfg);
    meta["parameters"] = {{"delta_i_mhz", cfg.delta_i_mhz},
                          {"delta_f_mhz", cfg.delta_f_mhz},
                          {"omega_i_mhz", cfg.omega_i_mhz},
                          {"t_final_ns_values", cfg.t_final_ns_values}};
    meta["dims"] = dims;
    return {std::move(csv), meta.dump(2) + "\n"};
}

RunResult run_ff_ts(const ExperimentConfig& cfg) {
    const IntegratorOptions opt = integrator_options(cfg);
    const double di = angular_from_mhz(cfg.delta_i_mhz);
    const double df = angular_from_mhz(cfg.delta_f_mhz);
    const double om = angular_from_mhz(cfg.omega_i_mhz);
    const int n = static_cast<int>(cfg.t_ramp_ns_values.size());
    std::vector<double> infid(n), tf(n);
    std::vector<int> dims(n);
    parallel_indexed(n, cfg.jobs, [&](int i) {
        const ScaledClock clock =
            make_clock(di, df, om, cfg.t_ramp_ns_values[i], cfg.solver_tol);
        tf[i] = clock.t_final;
        const int dim = sized_dim(max_tilde_displacement(clock.ramp), cfg.dim);
        dims[i] = dim;
        infid[i] = ffts_final_infidelity(clock, dim, opt);
    });
    std::string csv = "t_ramp_ns,t_f_ns,infidelity\n";
    for (int i = 0; i < n; ++i) {
        csv += format_g17(cfg.t_ramp_ns_values[i]) + ',' + format_g17(tf[i]) + ',' +
               format_g17(infid[i]) + '\n';
    }
    json meta = base_meta(cfg);
    meta["parameters"] = {{"delta_i_mhz", cfg.delta_i_mhz},
                          {"delta_f_mhz", cfg.delta_f_mhz},
                          {"omega_i_mhz", cfg.omega_i_mhz},
                          {"t_ramp_ns_values", cfg.t_ramp_ns_values},
                          {"solver_tol", cfg.solver_tol}};
    meta["dims"] = dims;
    return {std::move(csv), meta.dump(2) + "\n"};
}

RunResult run_cd_check(const ExperimentConfig& cfg) {
    const IntegratorOptions opt = integrator_options(cfg);
    const RampSpec spec =
        RampSpec::from_mhz(cfg.omega_i_mhz, cfg.omega_f_mhz, cfg.t_ramp_ns, cfg.delta_mhz);
    int max_level = 0;
    for (int lvl : cfg.fock_levels) max_level = std::max(max_level, lvl);
    const double alpha_bound =
        std::max(std::abs(sample_ramp(spec, 0.0).alpha0),
                 std::abs(sample_ramp(spec, spec.t_ramp).alpha0));
    const int dim = cfg.dim > 0 ? cfg.dim : default_dim_for(alpha_bound) + max_level + 4;

    const int n = static_cast<int>(cfg.fock_levels.size());
    std::vector<double> worst(n);
    parallel_indexed(n, cfg.jobs, [&](int i) {
        worst[i] = cd_drive_check(spec, cfg.fock_levels[i], dim, opt, cfg.samples).max_infidelity;
    });
    std::string csv = "n,max_infidelity\n";
    for (int i = 0; i < n; ++i) {
        csv += std::to_string(cfg.fock_levels[i]) + ',' + format_g17(worst[i]) + '\n';
    }
    json meta = base_meta(cfg);
    meta["parameters"] = {{"delta_mhz", cfg.delta_mhz},
                          {"omega_i_mhz", cfg.omega_i_mhz},
                          {"omega_f_mhz", cfg.omega_f_mhz},
                          {"t_ramp_ns", cfg.t_ramp_ns},
                          {"fock_levels", cfg.fock_levels},
                          {"samples", cfg.samples}};
    meta["dims"] = {dim};
    return {std::move(csv), meta.dump(2) + "\n"};
}

RunResult run_kpo_sweep(const ExperimentConfig& cfg) {
    IntegratorOptions opt = integrator_options(cfg);
    const KpoSystemSpec spec = KpoSystemSpec::from_mhz(
        cfg.kerr_mhz[0], cfg.kerr_mhz[1], cfg.pump_mhz[0], cfg.pump_mhz[1], cfg.g_c_mhz[0],
        cfg.g_c_mhz[1], cfg.g12_mhz, cfg.delta_i_mhz, cfg.delta_f_mhz, cfg.kpo_dims);
    std::string csv = "t_f_ns,schedule,infidelity\n";
    for (const std::string& name : cfg.schedules) {
        const ScheduleKind kind =
            name == "ff_ts" ? ScheduleKind::ff_ts : ScheduleKind::linear;
        const std::vector<SweepPoint> points =
            run_displacement_experiment(spec, cfg.t_final_ns_values, kind, opt);
        for (const SweepPoint& p : points) {
            csv += format_g17(p.t_final) + ',' + name + ',' + format_g17(p.infid) + '\n';
        }
    }
    json meta = base_meta(cfg);
    meta["parameters"] = {{"kerr_mhz", cfg.kerr_mhz},
                          {"pump_mhz", cfg.pump_mhz},
                          {"g_c_mhz", cfg.g_c_mhz},
                          {"g12_mhz", cfg.g12_mhz},
                          {"delta_i_mhz", cfg.delta_i_mhz},
                          {"delta_f_mhz", cfg.delta_f_mhz},
                          {"t_final_ns_values", cfg.t_final_ns_values},
                          {"schedules", cfg.schedules}};
    meta["dims"] = cfg.kpo_dims;
    return {std::move(csv), meta.dump(2) + "\n"};
}

} // namespace

RunResult execute(const ExperimentConfig& cfg) {
    if (cfg.jobs > 0) {
        kernels::set_max_threads(cfg.jobs);
    }
    switch (cfg.kind) {
    case ExperimentKind::ramp: return run_ramp(cfg);
    case ExperimentKind::ff_resonator: return run_ff_resonator(cfg);
    case ExperimentKind::lin_detuning: return run_lin_detuning(cfg);
    case ExperimentKind::ff_ts: return run_ff_ts(cfg);
    case ExperimentKind::cd_check: return run_cd_check(cfg);
    case ExperimentKind::kpo_sweep: return run_kpo_sweep(cfg);
    }
    throw config_error("unknown experiment kind");
}

void write_outputs(const RunResult& result, const std::string& out_path) {
    {
        std::ofstream f(out_path, std::ios::binary);
        if (!f) {
            throw config_error("cannot open output file '" + out_path + "'");
        }
        f << result.csv;
    }
    {
        const std::string meta_path = out_path + ".meta.json";
        std::ofstream f(meta_path, std::ios::binary);
        if (!f) {
            throw config_error("cannot open metadata file '" + meta_path + "'");
        }
        f << result.meta;
    }
}

} // namespace ffd

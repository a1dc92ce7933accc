// cli_config.hpp — experiment configuration: strict JSON in, validated
// parameters out. Frequencies enter as nu = omega/2pi in MHz, times in ns;
// conversion to angular units happens when schedules are built, never here.

#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"

namespace ffd {

enum class ExperimentKind { ramp, ff_resonator, lin_detuning, ff_ts, cd_check, kpo_sweep };

const char* kind_name(ExperimentKind kind);
std::optional<ExperimentKind> kind_from_name(const std::string& name);

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::ramp;

    // Single-resonator parameters.
    double delta_mhz = 0.0;
    double omega_i_mhz = 0.0;
    double omega_f_mhz = 0.0;
    double t_ramp_ns = 0.0;
    double delta_i_mhz = 0.0;
    double delta_f_mhz = 0.0;
    std::vector<double> t_ramp_ns_values;
    std::vector<double> t_final_ns_values;
    std::vector<int> fock_levels{0, 1};
    int samples = 201;
    int dim = 0; // 0 = size automatically from the visited displacements

    // Three-mode parameters.
    std::array<double, 2> kerr_mhz{0.0, 0.0};
    std::array<double, 2> pump_mhz{0.0, 0.0};
    std::array<double, 2> g_c_mhz{0.0, 0.0};
    double g12_mhz = 0.0;
    std::array<int, 3> kpo_dims{20, 20, 12};
    std::vector<std::string> schedules{"ff_ts", "linear"};

    // Numerics.
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double solver_tol = 1e-12;
    int jobs = 0; // 0 = library default
};

// Parses and validates a JSON config for the given experiment. Unknown keys
// are rejected. Throws config_error with the offending field named.
ExperimentConfig parse_config(const std::string& text, ExperimentKind kind);

// Command-line overrides applied after parsing.
void apply_tol_override(ExperimentConfig& cfg, const std::string& tol_spec);
void apply_dim_override(ExperimentConfig& cfg, const std::string& override_spec);

} // namespace ffd

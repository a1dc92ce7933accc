#include "cli_config.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

namespace ffd {

using nlohmann::json;

const char* kind_name(ExperimentKind kind) {
    switch (kind) {
    case ExperimentKind::ramp: return "ramp";
    case ExperimentKind::ff_resonator: return "ff-resonator";
    case ExperimentKind::lin_detuning: return "lin-detuning";
    case ExperimentKind::ff_ts: return "ff-ts";
    case ExperimentKind::cd_check: return "cd-check";
    case ExperimentKind::kpo_sweep: return "kpo-sweep";
    }
    return "?";
}

std::optional<ExperimentKind> kind_from_name(const std::string& name) {
    for (ExperimentKind k :
         {ExperimentKind::ramp, ExperimentKind::ff_resonator, ExperimentKind::lin_detuning,
          ExperimentKind::ff_ts, ExperimentKind::cd_check, ExperimentKind::kpo_sweep}) {
        if (name == kind_name(k)) return k;
    }
    return std::nullopt;
}

namespace {

double finite_number(const json& j, const std::string& key) {
    if (!j.is_number()) {
        throw config_error("config: '" + key + "' must be a number");
    }
    const double v = j.get<double>();
    if (!std::isfinite(v)) {
        throw config_error("config: '" + key + "' must be finite");
    }
    return v;
}

int positive_int(const json& j, const std::string& key) {
    if (!j.is_number_integer() || j.get<long>() <= 0) {
        throw config_error("config: '" + key + "' must be a positive integer");
    }
    return static_cast<int>(j.get<long>());
}

std::vector<double> positive_list(const json& j, const std::string& key) {
    if (!j.is_array() || j.empty()) {
        throw config_error("config: '" + key + "' must be a non-empty array");
    }
    std::vector<double> out;
    for (const json& e : j) {
        const double v = finite_number(e, key);
        if (!(v > 0.0)) {
            throw config_error("config: '" + key + "' entries must be > 0");
        }
        out.push_back(v);
    }
    return out;
}

// Scalar or 2-array, for parameters quoted per KPO.
std::array<double, 2> pair_or_scalar(const json& j, const std::string& key) {
    if (j.is_number()) {
        const double v = finite_number(j, key);
        return {v, v};
    }
    if (j.is_array() && j.size() == 2) {
        return {finite_number(j[0], key), finite_number(j[1], key)};
    }
    throw config_error("config: '" + key + "' must be a number or an array of two numbers");
}

struct KeySpec {
    std::set<std::string> required;
    std::set<std::string> optional;
};

KeySpec keys_for(ExperimentKind kind) {
    KeySpec ks;
    ks.optional = {"experiment", "rel_tol", "abs_tol"};
    switch (kind) {
    case ExperimentKind::ramp:
        ks.required = {"delta_mhz", "omega_i_mhz", "omega_f_mhz", "t_ramp_ns"};
        ks.optional.insert("samples");
        break;
    case ExperimentKind::ff_resonator:
        ks.required = {"delta_mhz", "omega_i_mhz", "omega_f_mhz", "t_ramp_ns_values"};
        ks.optional.insert("dim");
        break;
    case ExperimentKind::lin_detuning:
        ks.required = {"delta_i_mhz", "delta_f_mhz", "omega_i_mhz", "t_final_ns_values"};
        ks.optional.insert("dim");
        break;
    case ExperimentKind::ff_ts:
        ks.required = {"delta_i_mhz", "delta_f_mhz", "omega_i_mhz", "t_ramp_ns_values"};
        ks.optional.insert("dim");
        ks.optional.insert("solver_tol");
        break;
    case ExperimentKind::cd_check:
        ks.required = {"delta_mhz", "omega_i_mhz", "omega_f_mhz", "t_ramp_ns"};
        ks.optional.insert("fock_levels");
        ks.optional.insert("samples");
        ks.optional.insert("dim");
        break;
    case ExperimentKind::kpo_sweep:
        ks.required = {"kerr_mhz",    "pump_mhz",    "g_c_mhz",          "g12_mhz",
                       "delta_i_mhz", "delta_f_mhz", "t_final_ns_values"};
        ks.optional.insert("schedules");
        ks.optional.insert("dims");
        ks.optional.insert("solver_tol");
        break;
    }
    return ks;
}

} // namespace

ExperimentConfig parse_config(const std::string& text, ExperimentKind kind) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw config_error(std::string("config: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) {
        throw config_error("config: top level must be a JSON object");
    }

    const KeySpec ks = keys_for(kind);
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (!ks.required.contains(key) && !ks.optional.contains(key)) {
            throw config_error("config: unknown key '" + key + "' for experiment '" +
                               kind_name(kind) + "'");
        }
    }
    for (const std::string& key : ks.required) {
        if (!j.contains(key)) {
            throw config_error("config: " + key + " required for experiment '" +
                               kind_name(kind) + "'");
        }
    }

    ExperimentConfig cfg;
    cfg.kind = kind;

    if (j.contains("experiment")) {
        if (!j["experiment"].is_string() ||
            kind_from_name(j["experiment"].get<std::string>()) != kind) {
            throw config_error("config: 'experiment' does not match the subcommand '" +
                               std::string(kind_name(kind)) + "'");
        }
    }
    if (j.contains("rel_tol")) {
        cfg.rel_tol = finite_number(j["rel_tol"], "rel_tol");
        if (!(cfg.rel_tol > 0.0)) throw config_error("config: 'rel_tol' must be > 0");
    }
    if (j.contains("abs_tol")) {
        cfg.abs_tol = finite_number(j["abs_tol"], "abs_tol");
        if (!(cfg.abs_tol > 0.0)) throw config_error("config: 'abs_tol' must be > 0");
    }
    if (j.contains("solver_tol")) {
        cfg.solver_tol = finite_number(j["solver_tol"], "solver_tol");
        if (!(cfg.solver_tol > 0.0)) throw config_error("config: 'solver_tol' must be > 0");
    }
    if (j.contains("dim")) {
        cfg.dim = positive_int(j["dim"], "dim");
        if (cfg.dim < 2) throw config_error("config: 'dim' must be >= 2");
    }
    if (j.contains("samples")) {
        cfg.samples = positive_int(j["samples"], "samples");
        if (cfg.samples < 2) throw config_error("config: 'samples' must be >= 2");
    }

    auto get_num = [&](const char* key) { return finite_number(j.at(key), key); };

    switch (kind) {
    case ExperimentKind::ramp:
    case ExperimentKind::cd_check:
        cfg.delta_mhz = get_num("delta_mhz");
        cfg.omega_i_mhz = get_num("omega_i_mhz");
        cfg.omega_f_mhz = get_num("omega_f_mhz");
        cfg.t_ramp_ns = get_num("t_ramp_ns");
        if (!(cfg.t_ramp_ns > 0.0)) throw config_error("config: 't_ramp_ns' must be > 0");
        if (cfg.delta_mhz == 0.0) throw config_error("config: 'delta_mhz' must be nonzero");
        if (kind == ExperimentKind::cd_check && j.contains("fock_levels")) {
            cfg.fock_levels.clear();
            if (!j["fock_levels"].is_array() || j["fock_levels"].empty()) {
                throw config_error("config: 'fock_levels' must be a non-empty array");
            }
            for (const json& e : j["fock_levels"]) {
                if (!e.is_number_integer() || e.get<long>() < 0) {
                    throw config_error("config: 'fock_levels' entries must be >= 0 integers");
                }
                cfg.fock_levels.push_back(static_cast<int>(e.get<long>()));
            }
        }
        break;
    case ExperimentKind::ff_resonator:
        cfg.delta_mhz = get_num("delta_mhz");
        cfg.omega_i_mhz = get_num("omega_i_mhz");
        cfg.omega_f_mhz = get_num("omega_f_mhz");
        cfg.t_ramp_ns_values = positive_list(j.at("t_ramp_ns_values"), "t_ramp_ns_values");
        if (cfg.delta_mhz == 0.0) throw config_error("config: 'delta_mhz' must be nonzero");
        break;
    case ExperimentKind::lin_detuning:
        cfg.delta_i_mhz = get_num("delta_i_mhz");
        cfg.delta_f_mhz = get_num("delta_f_mhz");
        cfg.omega_i_mhz = get_num("omega_i_mhz");
        cfg.t_final_ns_values = positive_list(j.at("t_final_ns_values"), "t_final_ns_values");
        break;
    case ExperimentKind::ff_ts:
        cfg.delta_i_mhz = get_num("delta_i_mhz");
        cfg.delta_f_mhz = get_num("delta_f_mhz");
        cfg.omega_i_mhz = get_num("omega_i_mhz");
        cfg.t_ramp_ns_values = positive_list(j.at("t_ramp_ns_values"), "t_ramp_ns_values");
        if (cfg.omega_i_mhz == 0.0) throw config_error("config: 'omega_i_mhz' must be nonzero");
        break;
    case ExperimentKind::kpo_sweep: {
        cfg.kerr_mhz = pair_or_scalar(j.at("kerr_mhz"), "kerr_mhz");
        cfg.pump_mhz = pair_or_scalar(j.at("pump_mhz"), "pump_mhz");
        cfg.g_c_mhz = pair_or_scalar(j.at("g_c_mhz"), "g_c_mhz");
        cfg.g12_mhz = get_num("g12_mhz");
        cfg.delta_i_mhz = get_num("delta_i_mhz");
        cfg.delta_f_mhz = get_num("delta_f_mhz");
        cfg.t_final_ns_values = positive_list(j.at("t_final_ns_values"), "t_final_ns_values");
        if (j.contains("schedules")) {
            cfg.schedules.clear();
            if (!j["schedules"].is_array() || j["schedules"].empty()) {
                throw config_error("config: 'schedules' must be a non-empty array");
            }
            for (const json& e : j["schedules"]) {
                if (!e.is_string() ||
                    (e.get<std::string>() != "ff_ts" && e.get<std::string>() != "linear")) {
                    throw config_error("config: 'schedules' entries must be 'ff_ts' or 'linear'");
                }
                cfg.schedules.push_back(e.get<std::string>());
            }
        }
        if (j.contains("dims")) {
            const json& d = j["dims"];
            if (!d.is_array() || d.size() != 3) {
                throw config_error("config: 'dims' must be an array of three integers");
            }
            for (int m = 0; m < 3; ++m) {
                cfg.kpo_dims[m] = positive_int(d[m], "dims");
                if (cfg.kpo_dims[m] < 2) {
                    throw config_error("config: 'dims' entries must be >= 2");
                }
            }
        }
        break;
    }
    }
    return cfg;
}

void apply_tol_override(ExperimentConfig& cfg, const std::string& tol_spec) {
    const auto comma = tol_spec.find(',');
    try {
        std::size_t used = 0;
        const std::string rel_part = tol_spec.substr(0, comma);
        const double rel = std::stod(rel_part, &used);
        if (used != rel_part.size() || !(rel > 0.0)) throw std::invalid_argument("rel");
        cfg.rel_tol = rel;
        if (comma != std::string::npos) {
            const std::string abs_part = tol_spec.substr(comma + 1);
            const double abs = std::stod(abs_part, &used);
            if (used != abs_part.size() || !(abs > 0.0)) throw std::invalid_argument("abs");
            cfg.abs_tol = abs;
        }
    } catch (const std::exception&) {
        throw config_error("--tol expects REL or REL,ABS with positive values, got '" +
                           tol_spec + "'");
    }
}

void apply_dim_override(ExperimentConfig& cfg, const std::string& override_spec) {
    const auto eq = override_spec.find('=');
    if (eq == std::string::npos) {
        throw config_error("--dim-override expects MODE=N, got '" + override_spec + "'");
    }
    const std::string mode = override_spec.substr(0, eq);
    int value = 0;
    try {
        std::size_t used = 0;
        const std::string num = override_spec.substr(eq + 1);
        value = std::stoi(num, &used);
        if (used != num.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
        throw config_error("--dim-override expects an integer after '=', got '" +
                           override_spec + "'");
    }
    if (value < 2) {
        throw config_error("--dim-override: dimension must be >= 2");
    }
    if (mode == "mode") {
        cfg.dim = value;
    } else if (mode == "kpo1") {
        cfg.kpo_dims[0] = value;
    } else if (mode == "kpo2") {
        cfg.kpo_dims[1] = value;
    } else if (mode == "coupler") {
        cfg.kpo_dims[2] = value;
    } else {
        throw config_error("--dim-override: unknown mode '" + mode +
                           "' (expected mode, kpo1, kpo2 or coupler)");
    }
}

} // namespace ffd

// ffd — pulse design and verification for fast displacement of driven
// resonators. Subcommands read a JSON config, run the experiment and write
// a CSV plus a .meta.json sidecar with the resolved parameters.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cli_config.hpp"
#include "cli_run.hpp"
#include "version.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitAccuracy = 4;

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) {
        throw ffd::config_error("cannot read config file '" + path + "'");
    }
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void print_error_json(const std::string& category, const std::string& message, int code) {
    nlohmann::json e;
    e["error"] = category;
    e["message"] = message;
    e["exit_code"] = code;
    std::cerr << e.dump() << "\n";
}

struct SubArgs {
    std::string config_path;
    std::string out_path;
    int jobs = 0;
    std::string tol;
    std::vector<std::string> dim_overrides;
};

void add_common_flags(CLI::App* sub, SubArgs& args) {
    sub->add_option("--config", args.config_path, "JSON config file")->required();
    sub->add_option("--out", args.out_path, "output CSV path")->required();
    sub->add_option("--jobs", args.jobs, "worker count for sweeps (default: hardware)");
    sub->add_option("--tol", args.tol, "integrator tolerance REL or REL,ABS");
    sub->add_option("--dim-override", args.dim_overrides,
                    "truncation override MODE=N (mode, kpo1, kpo2, coupler)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(ffd::kToolName) + " " + ffd::kToolVersion +
                 " — detuning/drive schedule design for perfect resonator displacement"};
    app.require_subcommand(1);
    app.set_version_flag("--version", ffd::kToolVersion);

    const std::vector<std::pair<std::string, ffd::ExperimentKind>> kinds = {
        {"ramp", ffd::ExperimentKind::ramp},
        {"ff-resonator", ffd::ExperimentKind::ff_resonator},
        {"lin-detuning", ffd::ExperimentKind::lin_detuning},
        {"ff-ts", ffd::ExperimentKind::ff_ts},
        {"cd-check", ffd::ExperimentKind::cd_check},
        {"kpo-sweep", ffd::ExperimentKind::kpo_sweep},
    };
    const std::vector<std::string> descriptions = {
        "emit the drive-ramp trajectory and its derived quantities",
        "final-state infidelity under the plain and corrected drive ramps",
        "final-state infidelity under a linear detuning ramp at fixed drive",
        "fixed-drive detuning schedule from the scaled clock, with infidelity",
        "verify the counter-diabatic drive tracks the displaced number states",
        "three-mode sweep: coupler displacement infidelity vs gate half-time",
    };

    std::vector<SubArgs> args(kinds.size());
    std::vector<CLI::App*> subs;
    for (std::size_t k = 0; k < kinds.size(); ++k) {
        CLI::App* sub = app.add_subcommand(kinds[k].first, descriptions[k]);
        add_common_flags(sub, args[k]);
        subs.push_back(sub);
    }

    CLI11_PARSE(app, argc, argv);

    for (std::size_t k = 0; k < kinds.size(); ++k) {
        if (!subs[k]->parsed()) continue;
        try {
            ffd::ExperimentConfig cfg =
                ffd::parse_config(read_file(args[k].config_path), kinds[k].second);
            if (!args[k].tol.empty()) {
                ffd::apply_tol_override(cfg, args[k].tol);
            }
            for (const std::string& ov : args[k].dim_overrides) {
                ffd::apply_dim_override(cfg, ov);
            }
            cfg.jobs = args[k].jobs;
            const ffd::RunResult result = ffd::execute(cfg);
            ffd::write_outputs(result, args[k].out_path);
            return 0;
        } catch (const ffd::config_error& e) {
            print_error_json("config", e.what(), kExitConfig);
            return kExitConfig;
        } catch (const ffd::infeasible_schedule_error& e) {
            print_error_json("infeasible-schedule", e.what(), kExitInfeasible);
            return kExitInfeasible;
        } catch (const ffd::accuracy_error& e) {
            print_error_json("numerical-accuracy", e.what(), kExitAccuracy);
            return kExitAccuracy;
        } catch (const std::domain_error& e) {
            print_error_json("config", e.what(), kExitConfig);
            return kExitConfig;
        } catch (const std::invalid_argument& e) {
            print_error_json("config", e.what(), kExitConfig);
            return kExitConfig;
        }
    }
    return kExitConfig;
}

// cli_run.hpp — experiment execution: config in, CSV text + metadata out.
//
// Rendering is separated from file writing so tests can compare the exact
// bytes two runs produce. Numbers print with 17 significant digits and '\n'
// line endings; rerunning an identical config yields identical output.

#pragma once

#include <string>

#include "cli_config.hpp"

namespace ffd {

struct RunResult {
    std::string csv;  // header + rows
    std::string meta; // pretty-printed JSON sidecar contents
};

// Runs the configured experiment. Throws config_error,
// infeasible_schedule_error or accuracy_error (see errors.hpp).
RunResult execute(const ExperimentConfig& cfg);

// Writes result.csv to out_path and result.meta to out_path + ".meta.json".
void write_outputs(const RunResult& result, const std::string& out_path);

// %.17g rendering used for every CSV number.
std::string format_g17(double v);

} // namespace ffd

#include <doctest.h>

#include <string>

#include "cli_config.hpp"
#include "cli_run.hpp"

using namespace ffd;

TEST_SUITE_BEGIN("cli");

TEST_CASE("minimal corrected-ramp config is accepted") {
    const std::string text = R"({
        "delta_mhz": 30, "omega_i_mhz": 0, "omega_f_mhz": 120,
        "t_ramp_ns_values": [20]
    })";
    const ExperimentConfig cfg = parse_config(text, ExperimentKind::ff_resonator);
    CHECK(cfg.delta_mhz == 30.0);
    CHECK(cfg.omega_f_mhz == 120.0);
    CHECK(cfg.t_ramp_ns_values == std::vector<double>{20.0});
    CHECK(cfg.rel_tol == 1e-10);
}

TEST_CASE("missing ramp duration is reported by name") {
    const std::string text = R"({"delta_mhz": 30, "omega_i_mhz": 0, "omega_f_mhz": 120})";
    try {
        parse_config(text, ExperimentKind::ramp);
        FAIL("expected config_error");
    } catch (const config_error& e) {
        CHECK(std::string(e.what()).find("t_ramp") != std::string::npos);
        CHECK(std::string(e.what()).find("required") != std::string::npos);
    }
}

TEST_CASE("negative or undersized truncation is rejected") {
    const std::string text = R"({
        "delta_mhz": 30, "omega_i_mhz": 0, "omega_f_mhz": 120,
        "t_ramp_ns_values": [20], "dim": -4
    })";
    CHECK_THROWS_AS(parse_config(text, ExperimentKind::ff_resonator), config_error);
}

TEST_CASE("unknown keys are rejected in strict mode") {
    const std::string text = R"({
        "delta_mhz": 30, "omega_i_mhz": 0, "omega_f_mhz": 120,
        "t_ramp_ns": 20, "t_rampp_ns": 20
    })";
    try {
        parse_config(text, ExperimentKind::ramp);
        FAIL("expected config_error");
    } catch (const config_error& e) {
        CHECK(std::string(e.what()).find("t_rampp_ns") != std::string::npos);
    }
}

TEST_CASE("experiment tag must match the subcommand") {
    const std::string text = R"({
        "experiment": "ramp",
        "delta_mhz": 30, "omega_i_mhz": 0, "omega_f_mhz": 120,
        "t_ramp_ns_values": [20]
    })";
    CHECK_THROWS_AS(parse_config(text, ExperimentKind::ff_resonator), config_error);
}

TEST_CASE("malformed JSON is a config error") {
    CHECK_THROWS_AS(parse_config("{not json", ExperimentKind::ramp), config_error);
    CHECK_THROWS_AS(parse_config("[1,2]", ExperimentKind::ramp), config_error);
}

TEST_CASE("tolerance and dimension overrides") {
    ExperimentConfig cfg;
    apply_tol_override(cfg, "1e-8");
    CHECK(cfg.rel_tol == 1e-8);
    apply_tol_override(cfg, "1e-9,1e-11");
    CHECK(cfg.rel_tol == 1e-9);
    CHECK(cfg.abs_tol == 1e-11);
    CHECK_THROWS_AS(apply_tol_override(cfg, "fast"), config_error);
    CHECK_THROWS_AS(apply_tol_override(cfg, "-1e-9"), config_error);

    apply_dim_override(cfg, "mode=48");
    CHECK(cfg.dim == 48);
    apply_dim_override(cfg, "coupler=24");
    CHECK(cfg.kpo_dims[2] == 24);
    CHECK_THROWS_AS(apply_dim_override(cfg, "mode48"), config_error);
    CHECK_THROWS_AS(apply_dim_override(cfg, "rotor=48"), config_error);
    CHECK_THROWS_AS(apply_dim_override(cfg, "mode=1"), config_error);
}

TEST_CASE("ramp trajectory output") {
    const std::string text = R"({
        "delta_mhz": 30, "omega_i_mhz": 0, "omega_f_mhz": 120,
        "t_ramp_ns": 20, "samples": 5
    })";
    const ExperimentConfig cfg = parse_config(text, ExperimentKind::ramp);
    const RunResult result = execute(cfg);

    // Header + 5 sample rows.
    CHECK(result.csv.rfind("t_ns,alpha0,alpha0_dot_over_delta,alpha0_ddot_over_delta2,"
                           "alpha_ff,omega0_mhz,omega_ff_mhz\n", 0) == 0);
    int lines = 0;
    for (char ch : result.csv) lines += ch == '\n';
    CHECK(lines == 6);

    // Midpoint row: alpha0 = (omega_f/2)/delta = 2, omega0 = 60 MHz.
    CHECK(result.csv.find("\n10,2,") != std::string::npos);
    CHECK(result.csv.find(",60,") != std::string::npos);

    // Sidecar carries the resolved parameters.
    CHECK(result.meta.find("\"experiment\": \"ramp\"") != std::string::npos);
    CHECK(result.meta.find("\"t_ramp_ns\": 20") != std::string::npos);
}

TEST_CASE("seventeen significant digits round-trip") {
    const double v = 1.0 / 3.0;
    CHECK(std::stod(format_g17(v)) == v);
    CHECK(format_g17(60.0) == "60");
}

TEST_CASE("identical configs produce byte-identical output") {
    const std::string ramp_text = R"({
        "delta_mhz": 30, "omega_i_mhz": 0, "omega_f_mhz": 120,
        "t_ramp_ns": 20, "samples": 33
    })";
    const ExperimentConfig ramp_cfg = parse_config(ramp_text, ExperimentKind::ramp);
    const RunResult a = execute(ramp_cfg);
    const RunResult b = execute(ramp_cfg);
    CHECK(a.csv == b.csv);
    CHECK(a.meta == b.meta);

    // Also through the propagation path.
    const std::string ffts_text = R"({
        "delta_i_mhz": 200, "delta_f_mhz": 100, "omega_i_mhz": 80,
        "t_ramp_ns_values": [2]
    })";
    const ExperimentConfig ffts_cfg = parse_config(ffts_text, ExperimentKind::ff_ts);
    const RunResult c = execute(ffts_cfg);
    const RunResult d = execute(ffts_cfg);
    CHECK(c.csv == d.csv);
    CHECK(c.meta == d.meta);
}

TEST_CASE("infeasible schedules surface as the dedicated error") {
    const std::string text = R"({
        "delta_i_mhz": 20, "delta_f_mhz": 40, "omega_i_mhz": 80,
        "t_ramp_ns_values": [10]
    })";
    const ExperimentConfig cfg = parse_config(text, ExperimentKind::ff_ts);
    CHECK_THROWS_AS(execute(cfg), infeasible_schedule_error);
}

TEST_CASE("kpo sweep config round trip") {
    const std::string text = R"({
        "kerr_mhz": 2, "pump_mhz": 8, "g_c_mhz": 2, "g12_mhz": 0.02,
        "delta_i_mhz": 200, "delta_f_mhz": 20,
        "t_final_ns_values": [22, 33], "schedules": ["ff_ts"],
        "dims": [16, 16, 10]
    })";
    const ExperimentConfig cfg = parse_config(text, ExperimentKind::kpo_sweep);
    CHECK(cfg.kerr_mhz[0] == 2.0);
    CHECK(cfg.kerr_mhz[1] == 2.0);
    CHECK(cfg.kpo_dims == std::array<int, 3>{16, 16, 10});
    CHECK(cfg.schedules == std::vector<std::string>{"ff_ts"});
    CHECK_THROWS_AS(parse_config(R"({"kerr_mhz": 2})", ExperimentKind::kpo_sweep),
                    config_error);
}

TEST_SUITE_END();

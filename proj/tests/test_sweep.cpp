// Copyright 2026 The qthermo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>

#include <doctest.h>
#include <json.hpp>

#include "generators.hpp"
#include "qthermo/sweep.hpp"

using namespace qthermo;
using gen::error_code;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;
constexpr double kTildeBeta1 = -0.5822031088882179;
constexpr double kCorrelationBeta1 = -1.2753502894481632;

SweepConfig config_with(std::initializer_list<std::pair<const char *, const char *>> settings) {
    SweepConfig c;
    for (const auto &[k, v] : settings) apply_setting(c, k, v);
    return c;
}

double cell(const ResultTable &t, std::size_t row, std::string_view column) {
    return t.rows.at(row).values.at(t.column_index(column));
}

std::string write_temp(const std::string &name, const std::string &text) {
    const std::string path = "qthermo_test_" + name;
    std::ofstream(path) << text;
    return path;
}

} // namespace

TEST_CASE("settings") {
    SweepConfig c;
    CHECK(c.theta_steps == 33);
    CHECK(c.theta_max == kPi / 8);
    apply_setting(c, "theta-steps", "5");
    apply_setting(c, "beta-inv", "zero, 1,2.5");
    apply_setting(c, "mode", "sampled");
    apply_setting(c, "seed", "18446744073709551615");
    apply_setting(c, "format", "json");
    apply_setting(c, "threads", "3");
    CHECK(c.theta_steps == 5);
    CHECK(c.beta_inv == std::vector<double>{0.0, 1.0, 2.5});
    CHECK(c.mode == Mode::sampled);
    CHECK(c.seed == 18446744073709551615ULL);
    CHECK(c.format == OutputFormat::json);
    CHECK(c.threads == 3);
    CHECK(c.explicit_keys.count("seed") == 1);
    apply_setting(c, "beta-inv", "4");
    CHECK(c.beta_inv == std::vector<double>{4.0});

    CHECK(error_code([&] { apply_setting(c, "bogus", "1"); }) == ErrorCode::usage);
    CHECK(error_code([&] { apply_setting(c, "theta-steps", "abc"); }) == ErrorCode::usage);
    CHECK(error_code([&] { apply_setting(c, "n0", "-5"); }) == ErrorCode::usage);
    CHECK(error_code([&] { apply_setting(c, "beta-inv", "-1"); }) == ErrorCode::usage);
    CHECK(error_code([&] { apply_setting(c, "beta-inv", "1,,2"); }) == ErrorCode::usage);
    CHECK(error_code([&] { apply_setting(c, "mode", "fast"); }) == ErrorCode::usage);
    CHECK(error_code([&] { apply_setting(c, "format", "xml"); }) == ErrorCode::usage);
    CHECK(error_code([&] { apply_setting(c, "threads", "0"); }) == ErrorCode::usage);
    CHECK(error_code([&] { apply_setting(c, "seed", "99999999999999999999"); }) == ErrorCode::usage);
}

TEST_CASE("validation") {
    CHECK(error_code([] { validate(config_with({{"theta-steps", "0"}})); }) == ErrorCode::usage);
    CHECK(error_code([] { validate(config_with({{"theta-max", "0.5"}})); }) == ErrorCode::usage);
    CHECK(error_code([] { validate(config_with({{"theta-min", "0.3"}, {"theta-max", "0.2"}})); }) ==
          ErrorCode::usage);
    CHECK(error_code([] { validate(config_with({{"mode", "sampled"}, {"resamples", "1"}})); }) == ErrorCode::usage);
    CHECK(error_code([] { validate(config_with({{"mode", "sampled"}, {"n0", "0"}})); }) == ErrorCode::usage);
    CHECK(error_code([] { validate(config_with({{"mode", "sampled"}, {"shots", "0"}})); }) == ErrorCode::usage);
    CHECK_NOTHROW(validate(SweepConfig{}));
}

TEST_CASE("theta grid") {
    const auto g = theta_grid(SweepConfig{});
    REQUIRE(g.size() == 33);
    CHECK(g.front() == 0.0);
    CHECK(g.back() == kPi / 8);
    CHECK(g[16] == doctest::Approx(kPi / 16));
    const auto one = theta_grid(config_with({{"theta-steps", "1"}, {"theta-min", "0.1"}}));
    CHECK(one == std::vector<double>{0.1});
}

TEST_CASE("signal parsing") {
    CHECK(max_abs_diff(parse_signal(" D ").matrix(), SignalState::named("D").matrix()) == 0.0);
    CHECK(max_abs_diff(parse_signal("0,0,1").matrix(), SignalState::named("H").matrix()) < 1e-15);
    CHECK(error_code([] { (void)parse_signal("X"); }) == ErrorCode::usage);
    CHECK(error_code([] { (void)parse_signal("1,0"); }) == ErrorCode::usage);
    CHECK(error_code([] { (void)parse_signal("1,1,1"); }) == ErrorCode::usage);
}

TEST_CASE("config files") {
    const std::string path = write_temp("cfg.txt", "# comment\n\ntheta-steps = 4\nbeta-inv=1\nbeta-inv=zero\n"
                                                   "mode=sampled  # trailing\n");
    SweepConfig c;
    load_config_file(c, path);
    CHECK(c.theta_steps == 4);
    CHECK(c.beta_inv == std::vector<double>{1.0, 0.0});
    CHECK(c.mode == Mode::sampled);
    std::remove(path.c_str());

    const std::string bad = write_temp("bad.txt", "theta-steps\n");
    try {
        load_config_file(c, bad);
        FAIL("expected a usage error");
    } catch (const Error &e) {
        CHECK(e.code() == ErrorCode::usage);
        CHECK(std::string(e.what()).find(":1:") != std::string::npos);
    }
    std::remove(bad.c_str());
    CHECK(error_code([&] { load_config_file(c, "/nonexistent/qthermo.cfg"); }) == ErrorCode::io);
}

TEST_CASE("sweep in ideal mode") {
    SUBCASE("zero temperature") {
        const ResultTable t = cmd_sweep(SweepConfig{});
        REQUIRE(t.rows.size() == 33);
        CHECK(t.columns == std::vector<std::string>{"theta_rad", "beta_inv", "p0", "p1", "shannon_nats",
                                                    "s_signal_nats", "go_info_nats", "tilde_info_nats",
                                                    "residual_nats", "w_meas", "delta_f", "s_irr_nats",
                                                    "bound_gap_nats", "w_extract"});
        for (std::size_t r = 0; r < t.rows.size(); ++r) {
            CHECK(t.rows[r].zero_temperature);
            CHECK(std::abs(cell(t, r, "go_info_nats")) <= 1e-9);
            CHECK(cell(t, r, "s_irr_nats") == 0.0);
            CHECK(cell(t, r, "beta_inv") == 0.0);
        }
        CHECK(t.failed_rows() == 0);
    }
    SUBCASE("beta^-1 = 1") {
        const ResultTable t = cmd_sweep(config_with({{"beta-inv", "1"}}));
        for (std::size_t r = 0; r < t.rows.size(); ++r) {
            CHECK(std::abs(cell(t, r, "tilde_info_nats") - kTildeBeta1) <= 1e-6);
            CHECK(std::abs(cell(t, r, "bound_gap_nats") - kLn2) <= 1e-9);
        }
    }
    SUBCASE("rows ordered by temperature then theta") {
        const ResultTable t = cmd_sweep(config_with({{"beta-inv", "2,zero,1"}, {"theta-steps", "3"}}));
        REQUIRE(t.rows.size() == 9);
        const double expected[3] = {0.0, 1.0, 2.0};
        for (std::size_t r = 0; r < 9; ++r) {
            CHECK(cell(t, r, "beta_inv") == expected[r / 3]);
            CHECK(cell(t, r, "theta_rad") == theta_grid(config_with({{"theta-steps", "3"}}))[r % 3]);
        }
    }
    SUBCASE("mixed signal and infinite temperature") {
        const ResultTable t = cmd_sweep(config_with({{"signal", "mixed"}, {"theta-steps", "2"}}));
        CHECK(cell(t, 1, "go_info_nats") == doctest::Approx(kLn2));
    }
    CHECK(error_code([] { (void)cmd_sweep(config_with({{"theta-steps", "0"}})); }) == ErrorCode::usage);
}

TEST_CASE("sampled sweep columns and determinism") {
    const SweepConfig base = config_with({{"mode", "sampled"}, {"theta-steps", "3"}, {"beta-inv", "zero,1"},
                                          {"resamples", "20"}, {"n0", "10000"}, {"shots", "2000"}, {"seed", "5"}});
    const ResultTable t = cmd_sweep(base);
    for (const char *name : {"p0", "p1", "shannon_nats", "go_info_nats", "tilde_info_nats", "residual_nats",
                             "w_meas", "delta_f", "bound_gap_nats", "w_extract"}) {
        const std::size_t i = t.column_index(name);
        CHECK(t.columns.at(i + 1) == std::string(name) + "_err");
    }
    CHECK(error_code([&] { (void)t.column_index("s_irr_nats_err"); }) == ErrorCode::invalid_input);
    CHECK(error_code([&] { (void)t.column_index("s_signal_nats_err"); }) == ErrorCode::invalid_input);
    for (std::size_t r = 0; r < t.rows.size(); ++r) CHECK(cell(t, r, "shannon_nats_err") >= 0.0);

    SweepConfig threaded = base;
    threaded.threads = 4;
    const std::string csv = to_csv(t);
    CHECK(csv == to_csv(cmd_sweep(base)));
    CHECK(csv == to_csv(cmd_sweep(threaded)));
    CHECK(to_json(t) == to_json(cmd_sweep(threaded)));

    SweepConfig reseeded = base;
    apply_setting(reseeded, "seed", "6");
    CHECK(csv != to_csv(cmd_sweep(reseeded)));
    CHECK(csv.find("# rng_algorithm=mt19937_64+splitmix64-substreams") != std::string::npos);
    CHECK(csv.find("# defaulted=none") != std::string::npos);
}

TEST_CASE("ideal output has no error columns") {
    const ResultTable t = cmd_sweep(config_with({{"theta-steps", "2"}}));
    for (const auto &c : t.columns) CHECK(c.find("_err") == std::string::npos);
    CHECK(to_csv(t).find("# rng_algorithm") == std::string::npos);
}

TEST_CASE("fig3") {
    const ResultTable t = cmd_fig3(SweepConfig{});
    CHECK(t.columns == std::vector<std::string>{"theta_rad", "shannon_nats", "go_info_nats", "residual_nats"});
    REQUIRE(t.rows.size() == 33);
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        CHECK(std::abs(cell(t, r, "shannon_nats") - kLn2) <= 1e-12);
        CHECK(std::abs(cell(t, r, "go_info_nats")) <= 1e-9);
        CHECK(std::abs(cell(t, r, "residual_nats") + kLn2) <= 1e-9);
    }
    CHECK(error_code([] { (void)cmd_fig3(config_with({{"theta-steps", "0"}})); }) == ErrorCode::usage);

    const ResultTable s = cmd_fig3(config_with({{"mode", "sampled"}, {"theta-steps", "2"}, {"resamples", "10"}}));
    CHECK(s.columns.at(1) == "shannon_nats_ideal");
    CHECK(s.column_index("residual_nats_err") == s.columns.size() - 1);
}

TEST_CASE("fig3 sampled Shannon entropy is unbiased within 3 standard errors") {
    // 100 seeds at theta = pi/16, n0 = 1e5: each sampled mean should sit within
    // 3 of its own standard errors of ln 2 (the MC mean has error std/sqrt(R)).
    int within = 0;
    for (int seed = 0; seed < 100; ++seed) {
        SweepConfig c = config_with({{"mode", "sampled"}, {"theta-steps", "1"}, {"resamples", "30"},
                                     {"shots", "100"}, {"n0", "100000"}});
        c.theta_min = kPi / 16;
        c.theta_max = kPi / 16;
        c.seed = static_cast<std::uint64_t>(seed);
        const ResultTable t = cmd_fig3(c);
        if (std::abs(cell(t, 0, "shannon_nats") - kLn2) <= 3 * cell(t, 0, "shannon_nats_err")) ++within;
    }
    CHECK(within >= 95);
}

TEST_CASE("fig4") {
    const ResultTable t = cmd_fig4(SweepConfig{});
    CHECK(t.columns == std::vector<std::string>{"beta_inv", "theta_rad", "correlation_nats", "bound_gap_nats"});
    REQUIRE(t.rows.size() == 21 * 33);
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        CHECK(cell(t, r, "bound_gap_nats") >= 0.0);
        CHECK(std::abs(cell(t, r, "bound_gap_nats") - kLn2) <= 1e-9);
        const double beta_inv = cell(t, r, "beta_inv");
        if (beta_inv == 1.0) CHECK(std::abs(cell(t, r, "correlation_nats") - kCorrelationBeta1) <= 1e-6);
        if (beta_inv == 0.0) CHECK(std::abs(cell(t, r, "correlation_nats") + kLn2) <= 1e-9);
    }
    for (std::size_t block = 0; block < 21; ++block) {
        double lo = 1e9, hi = -1e9;
        for (std::size_t i = 0; i < 33; ++i) {
            const double v = cell(t, block * 33 + i, "correlation_nats");
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        CHECK(hi - lo <= 1e-9);
    }
    // near-infinite temperature approaches -2 ln 2
    const ResultTable hot = cmd_fig4(config_with({{"beta-inv", "1e12"}, {"theta-steps", "2"}}));
    CHECK(cell(hot, 0, "correlation_nats") == doctest::Approx(-2 * kLn2).epsilon(1e-9));
}

TEST_CASE("number formatting") {
    CHECK(format_number(0.0) == "0");
    CHECK(format_number(-0.0) == "0");
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(kLn2) == "0.693147180559945");
    CHECK(format_number(1e-20) == "1e-20");
    CHECK(format_number(NAN) == "nan");
    CHECK(format_number(INFINITY) == "inf");
    CHECK(format_number(-INFINITY) == "-inf");
}

TEST_CASE("CSV and JSON carry identical values") {
    const ResultTable t = cmd_sweep(config_with({{"beta-inv", "zero,0.5"}, {"theta-steps", "4"}}));
    const std::string csv = to_csv(t);
    const auto json = nlohmann::json::parse(to_json(t));
    CHECK(json["metadata"]["command"] == "sweep");
    CHECK(json["columns"].size() == t.columns.size());
    REQUIRE(json["rows"].size() == t.rows.size());

    std::istringstream in(csv);
    std::string line;
    std::vector<std::string> data;
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '#') data.push_back(line);
    REQUIRE(data.size() == t.rows.size() + 1);
    CHECK(data[0].rfind("theta_rad,beta_inv,p0", 0) == 0);
    for (std::size_t r = 0; r < t.rows.size(); ++r) {
        std::istringstream fields(data[r + 1]);
        std::string field;
        std::size_t c = 0;
        while (std::getline(fields, field, ',')) {
            const double from_csv = std::stod(field);
            const double from_json = json["rows"][r][t.columns[c]].get<double>();
            CHECK(std::abs(from_csv - from_json) <= 1e-12 * std::max(1.0, std::abs(from_csv)));
            ++c;
        }
        CHECK(c == t.columns.size());
        CHECK(json["rows"][r]["is_zero_temperature"].get<bool>() == t.rows[r].zero_temperature);
    }
    CHECK(serialize(t, OutputFormat::csv) == csv);
}

TEST_CASE("row failures are reported in both formats") {
    ResultTable t;
    t.command = "sweep";
    t.columns = {"a", "b"};
    t.rows.push_back({{1.0, 2.0}, false, ""});
    t.rows.push_back({{NAN, NAN}, false, "beta (W - Delta F) is undefined"});
    CHECK(t.failed_rows() == 1);
    const std::string csv = to_csv(t);
    CHECK(csv.find("nan,nan") != std::string::npos);
    CHECK(csv.find("# error row=1: beta (W - Delta F) is undefined") != std::string::npos);
    const auto json = nlohmann::json::parse(to_json(t));
    CHECK(json["rows"][1]["a"].is_null());
    CHECK(json["rows"][1]["error"] == "beta (W - Delta F) is undefined");
    CHECK_FALSE(json["rows"][0].contains("error"));
}

TEST_CASE("gate check") {
    const GateReport ok = cmd_gate_check();
    CHECK(ok.passed());
    CHECK(ok.checks.size() >= 9);
    for (const auto &c : ok.checks) {
        CHECK(c.passed);
        if (c.name == "kraus_completeness") CHECK(c.value < 1e-12);
    }
    const GateReport bad = cmd_gate_check(1e-6);
    CHECK_FALSE(bad.passed());
    bool unitarity_failed = false;
    for (const auto &c : bad.checks)
        if (c.name == "ppbs_scaled_unitarity") unitarity_failed = !c.passed;
    CHECK(unitarity_failed);
    const std::string text = render(bad);
    CHECK(text.find("FAIL") != std::string::npos);
    CHECK(render(ok).find("FAIL") == std::string::npos);
}

TEST_CASE("tomography demo") {
    SweepConfig c = config_with({{"theta-steps", "1"}, {"theta-min", "0.39269908169872414"}, {"beta-inv", "1"}});
    c.theta_max = kPi / 8;
    c.theta_min = kPi / 8;
    const std::string ideal = cmd_tomo_demo(c);
    CHECK(ideal.find("rho_hat") != std::string::npos);
    CHECK(ideal.find("0.731058578630005") != std::string::npos);
    apply_setting(c, "mode", "sampled");
    apply_setting(c, "shots", "1000");
    CHECK(cmd_tomo_demo(c) == cmd_tomo_demo(c));
}

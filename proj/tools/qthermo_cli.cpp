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

// Command-line driver. Links only against the C API in libqthermo.

#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qthermo/qthermo.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitFailure = 2;

int exit_code_for(qt_status status) {
    switch (status) {
    case QT_OK: return kExitOk;
    case QT_ERROR_USAGE:
    case QT_ERROR_IO: return kExitUsage;
    default: return kExitFailure;
    }
}

int report(qt_status status) {
    std::cerr << "qthermo: " << qt_status_string(status) << ": " << qt_last_error() << "\n";
    return exit_code_for(status);
}

struct GridOptions {
    std::map<std::string, std::string> values;
    std::vector<std::string> beta_inv;
    std::string config_file;
};

void add_grid_options(CLI::App *cmd, GridOptions &opts) {
    static const std::pair<const char *, const char *> kOptions[] = {
        {"theta-min", "smallest measurement strength theta, radians (default 0)"},
        {"theta-max", "largest theta, radians, at most pi/8 (default pi/8)"},
        {"theta-steps", "number of theta grid points (default 33)"},
        {"mode", "ideal | sampled (default ideal)"},
        {"n0", "expected coincidences per grid point in sampled mode (default 100000)"},
        {"shots", "tomography shots per Pauli axis in sampled mode (default 10000)"},
        {"resamples", "Monte Carlo resamples per grid point (default 1000)"},
        {"seed", "64-bit RNG seed (default 0)"},
        {"signal", "H, V, D, A, R, L, mixed, or a Bloch vector x,y,z (default D)"},
        {"out", "output file (default stdout)"},
        {"format", "csv | json (default csv)"},
        {"threads", "worker threads for grid evaluation (default 1)"},
    };
    for (const auto &[key, help] : kOptions) {
        cmd->add_option_function<std::string>(
            std::string("--") + key, [&opts, key](const std::string &v) { opts.values[key] = v; }, help);
    }
    cmd->add_option("--beta-inv", opts.beta_inv, "meter temperature beta^-1 (repeatable or comma list; 'zero' for T=0)");
    cmd->add_option("--config", opts.config_file, "key=value configuration file (flags override it)");
}

struct ConfigHandle {
    qt_config *ptr = nullptr;
    ~ConfigHandle() { qt_config_destroy(ptr); }
};

qt_status build_config(const GridOptions &opts, ConfigHandle &handle) {
    if (qt_status s = qt_config_create(&handle.ptr); s != QT_OK) return s;
    if (!opts.config_file.empty()) {
        if (qt_status s = qt_config_load_file(handle.ptr, opts.config_file.c_str()); s != QT_OK) return s;
    }
    for (const auto &[key, value] : opts.values) {
        if (qt_status s = qt_config_set(handle.ptr, key.c_str(), value.c_str()); s != QT_OK) return s;
    }
    if (!opts.beta_inv.empty()) {
        std::string joined;
        for (const auto &t : opts.beta_inv) joined += (joined.empty() ? "" : ",") + t;
        if (qt_status s = qt_config_set(handle.ptr, "beta-inv", joined.c_str()); s != QT_OK) return s;
    }
    return QT_OK;
}

int run_table(qt_command command, const GridOptions &opts) {
    ConfigHandle config;
    if (qt_status s = build_config(opts, config); s != QT_OK) return report(s);

    qt_table *table = nullptr;
    if (qt_status s = qt_run(command, config.ptr, &table); s != QT_OK) return report(s);

    const char *path = nullptr;
    qt_format format = QT_FORMAT_CSV;
    qt_config_output(config.ptr, &path, &format);

    qt_status written = QT_OK;
    if (path && *path) {
        written = qt_table_write(table, format, path);
    } else {
        char *text = nullptr;
        written = qt_table_serialize(table, format, &text);
        if (written == QT_OK) std::fputs(text, stdout);
        qt_string_free(text);
    }
    const size_t failed = qt_table_failed_rows(table);
    qt_table_destroy(table);
    if (written != QT_OK) return report(written);
    if (failed > 0) {
        std::cerr << "qthermo: " << failed << " row(s) failed numerically\n";
        return kExitFailure;
    }
    return kExitOk;
}

int run_gate_check(double perturbation) {
    qt_gate_report *gate = nullptr;
    if (qt_status s = qt_gate_check(perturbation, &gate); s != QT_OK) return report(s);
    char *text = nullptr;
    if (qt_gate_report_render(gate, &text) == QT_OK) std::fputs(text, stdout);
    qt_string_free(text);
    const bool passed = qt_gate_report_passed(gate) != 0;
    qt_gate_report_destroy(gate);
    return passed ? kExitOk : kExitFailure;
}

int run_tomo_demo(const GridOptions &opts) {
    ConfigHandle config;
    if (qt_status s = build_config(opts, config); s != QT_OK) return report(s);
    char *text = nullptr;
    if (qt_status s = qt_tomo_demo(config.ptr, &text); s != QT_OK) return report(s);
    std::fputs(text, stdout);
    qt_string_free(text);
    return kExitOk;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"qthermo: information-thermodynamics of variable-strength qubit measurements"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(qt_version()));

    GridOptions sweep_opts, fig3_opts, fig4_opts, tomo_opts;
    auto *sweep = app.add_subcommand("sweep", "full scalar report over the (beta^-1, theta) grid");
    add_grid_options(sweep, sweep_opts);
    auto *fig3 = app.add_subcommand("fig3", "zero-temperature Shannon entropy, GO information, residual entropy");
    add_grid_options(fig3, fig3_opts);
    auto *fig4 = app.add_subcommand("fig4", "correlation term and bound gap over temperature and theta");
    add_grid_options(fig4, fig4_opts);
    auto *tomo = app.add_subcommand("tomo-demo", "reconstruct the conditional signal states");
    add_grid_options(tomo, tomo_opts);

    double perturbation = 0.0;
    auto *gate = app.add_subcommand("gate-check", "verify the PPBS gate model and the measurement operators");
    gate->add_option("--perturb", perturbation, "add this amount to one gate amplitude (negative control)")
        ->group("");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return kExitUsage;
    }

    if (*sweep) return run_table(QT_COMMAND_SWEEP, sweep_opts);
    if (*fig3) return run_table(QT_COMMAND_FIG3, fig3_opts);
    if (*fig4) return run_table(QT_COMMAND_FIG4, fig4_opts);
    if (*tomo) return run_tomo_demo(tomo_opts);
    if (*gate) return run_gate_check(perturbation);
    return kExitUsage;
}

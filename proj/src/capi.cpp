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

#include "qthermo/qthermo.h"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <new>
#include <string>

#include "qthermo/error.hpp"
#include "qthermo/sweep.hpp"
#include "qthermo/thermo.hpp"

struct qt_config {
    qthermo::SweepConfig config;
};

struct qt_table {
    qthermo::ResultTable table;
};

struct qt_gate_report {
    qthermo::GateReport report;
};

namespace {

thread_local std::string g_last_error;

qt_status to_status(qthermo::ErrorCode code) {
    using qthermo::ErrorCode;
    switch (code) {
    case ErrorCode::invalid_input: return QT_ERROR_INVALID_INPUT;
    case ErrorCode::domain: return QT_ERROR_DOMAIN;
    case ErrorCode::invalid_distribution: return QT_ERROR_INVALID_DISTRIBUTION;
    case ErrorCode::no_support: return QT_ERROR_NO_SUPPORT;
    case ErrorCode::empty_data: return QT_ERROR_EMPTY_DATA;
    case ErrorCode::divergence: return QT_ERROR_DIVERGENCE;
    case ErrorCode::numerical: return QT_ERROR_NUMERICAL;
    case ErrorCode::check_failed: return QT_ERROR_CHECK_FAILED;
    case ErrorCode::usage: return QT_ERROR_USAGE;
    case ErrorCode::io: return QT_ERROR_IO;
    }
    return QT_ERROR_INTERNAL;
}

qt_status set_error(qt_status status, const char *message) {
    g_last_error = message;
    return status;
}

template <class F>
qt_status guarded(F &&body) {
    try {
        g_last_error.clear();
        return body();
    } catch (const qthermo::Error &e) {
        return set_error(to_status(e.code()), e.what());
    } catch (const std::bad_alloc &) {
        return set_error(QT_ERROR_INTERNAL, "out of memory");
    } catch (const std::exception &e) {
        return set_error(QT_ERROR_INTERNAL, e.what());
    } catch (...) {
        return set_error(QT_ERROR_INTERNAL, "unknown error");
    }
}

char *copy_string(const std::string &text) {
    char *out = static_cast<char *>(std::malloc(text.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, text.c_str(), text.size() + 1);
    return out;
}

qt_status null_argument(const char *what) {
    return set_error(QT_ERROR_INVALID_INPUT, (std::string("null argument: ") + what).c_str());
}

qthermo::OutputFormat to_format(qt_format format) {
    return format == QT_FORMAT_JSON ? qthermo::OutputFormat::json : qthermo::OutputFormat::csv;
}

} // namespace

extern "C" {

const char *qt_version(void) { return "0.1.0"; }

const char *qt_status_string(qt_status status) {
    switch (status) {
    case QT_OK: return "ok";
    case QT_ERROR_INVALID_INPUT: return "invalid input";
    case QT_ERROR_DOMAIN: return "domain error";
    case QT_ERROR_INVALID_DISTRIBUTION: return "invalid distribution";
    case QT_ERROR_NO_SUPPORT: return "no support";
    case QT_ERROR_EMPTY_DATA: return "empty data";
    case QT_ERROR_DIVERGENCE: return "divergence";
    case QT_ERROR_NUMERICAL: return "numerical failure";
    case QT_ERROR_CHECK_FAILED: return "check failed";
    case QT_ERROR_USAGE: return "usage error";
    case QT_ERROR_IO: return "i/o error";
    case QT_ERROR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char *qt_last_error(void) { return g_last_error.c_str(); }

void qt_string_free(char *text) { std::free(text); }

qt_status qt_config_create(qt_config **out) {
    if (!out) return null_argument("out");
    return guarded([&] {
        *out = new qt_config{};
        return QT_OK;
    });
}

void qt_config_destroy(qt_config *config) { delete config; }

qt_status qt_config_set(qt_config *config, const char *key, const char *value) {
    if (!config) return null_argument("config");
    if (!key || !value) return null_argument("key/value");
    return guarded([&] {
        qthermo::apply_setting(config->config, key, value);
        return QT_OK;
    });
}

qt_status qt_config_load_file(qt_config *config, const char *path) {
    if (!config) return null_argument("config");
    if (!path) return null_argument("path");
    return guarded([&] {
        qthermo::load_config_file(config->config, path);
        return QT_OK;
    });
}

qt_status qt_config_output(const qt_config *config, const char **path, qt_format *format) {
    if (!config) return null_argument("config");
    if (path) *path = config->config.out.c_str();
    if (format) *format = config->config.format == qthermo::OutputFormat::json ? QT_FORMAT_JSON : QT_FORMAT_CSV;
    return QT_OK;
}

qt_status qt_run(qt_command command, const qt_config *config, qt_table **out) {
    if (!config) return null_argument("config");
    if (!out) return null_argument("out");
    *out = nullptr;
    return guarded([&] {
        qthermo::ResultTable table;
        switch (command) {
        case QT_COMMAND_SWEEP: table = qthermo::cmd_sweep(config->config); break;
        case QT_COMMAND_FIG3: table = qthermo::cmd_fig3(config->config); break;
        case QT_COMMAND_FIG4: table = qthermo::cmd_fig4(config->config); break;
        default: return set_error(QT_ERROR_USAGE, "unknown command");
        }
        *out = new qt_table{std::move(table)};
        return QT_OK;
    });
}

void qt_table_destroy(qt_table *table) { delete table; }

size_t qt_table_row_count(const qt_table *table) { return table ? table->table.rows.size() : 0; }

size_t qt_table_column_count(const qt_table *table) { return table ? table->table.columns.size() : 0; }

const char *qt_table_column_name(const qt_table *table, size_t column) {
    if (!table || column >= table->table.columns.size()) return nullptr;
    return table->table.columns[column].c_str();
}

qt_status qt_table_value(const qt_table *table, size_t row, size_t column, double *out) {
    if (!table) return null_argument("table");
    if (!out) return null_argument("out");
    if (row >= table->table.rows.size() || column >= table->table.columns.size()) {
        return set_error(QT_ERROR_INVALID_INPUT, "table index out of range");
    }
    *out = table->table.rows[row].values[column];
    return QT_OK;
}

size_t qt_table_failed_rows(const qt_table *table) { return table ? table->table.failed_rows() : 0; }

qt_status qt_table_serialize(const qt_table *table, qt_format format, char **out_text) {
    if (!table) return null_argument("table");
    if (!out_text) return null_argument("out_text");
    return guarded([&] {
        *out_text = copy_string(qthermo::serialize(table->table, to_format(format)));
        return QT_OK;
    });
}

qt_status qt_table_write(const qt_table *table, qt_format format, const char *path) {
    if (!table) return null_argument("table");
    if (!path) return null_argument("path");
    return guarded([&] {
        std::ofstream os(path, std::ios::binary | std::ios::trunc);
        if (!os) return set_error(QT_ERROR_IO, (std::string("cannot open '") + path + "' for writing").c_str());
        os << qthermo::serialize(table->table, to_format(format));
        if (!os) return set_error(QT_ERROR_IO, (std::string("write to '") + path + "' failed").c_str());
        return QT_OK;
    });
}

qt_status qt_gate_check(double perturbation, qt_gate_report **out) {
    if (!out) return null_argument("out");
    *out = nullptr;
    return guarded([&] {
        *out = new qt_gate_report{qthermo::cmd_gate_check(perturbation)};
        return QT_OK;
    });
}

void qt_gate_report_destroy(qt_gate_report *report) { delete report; }

int qt_gate_report_passed(const qt_gate_report *report) { return report && report->report.passed() ? 1 : 0; }

size_t qt_gate_report_count(const qt_gate_report *report) { return report ? report->report.checks.size() : 0; }

qt_status qt_gate_report_entry(const qt_gate_report *report, size_t index, const char **name, int *passed,
                               double *value, double *threshold) {
    if (!report) return null_argument("report");
    if (index >= report->report.checks.size()) return set_error(QT_ERROR_INVALID_INPUT, "check index out of range");
    const qthermo::GateCheck &c = report->report.checks[index];
    if (name) *name = c.name.c_str();
    if (passed) *passed = c.passed ? 1 : 0;
    if (value) *value = c.value;
    if (threshold) *threshold = c.threshold;
    return QT_OK;
}

qt_status qt_gate_report_render(const qt_gate_report *report, char **out_text) {
    if (!report) return null_argument("report");
    if (!out_text) return null_argument("out_text");
    return guarded([&] {
        *out_text = copy_string(qthermo::render(report->report));
        return QT_OK;
    });
}

qt_status qt_tomo_demo(const qt_config *config, char **out_text) {
    if (!config) return null_argument("config");
    if (!out_text) return null_argument("out_text");
    return guarded([&] {
        *out_text = copy_string(qthermo::cmd_tomo_demo(config->config));
        return QT_OK;
    });
}

qt_status qt_evaluate_point(double theta, double beta_inv, double bloch_x, double bloch_y, double bloch_z,
                            qt_thermo_point *out) {
    if (!out) return null_argument("out");
    return guarded([&] {
        const qthermo::ThermoReport r =
            qthermo::evaluate(qthermo::MeasurementStrength(theta), qthermo::InverseTemperature::from_temperature(beta_inv),
                              qthermo::SignalState::from_bloch(bloch_x, bloch_y, bloch_z));
        *out = qt_thermo_point{r.theta,
                               r.beta.temperature(),
                               r.beta.is_zero_temperature() ? 1 : 0,
                               r.p[0],
                               r.p[1],
                               r.h_shannon,
                               r.s_signal,
                               r.go_info,
                               r.go_residual,
                               r.tilde_info,
                               r.residual_term,
                               r.w_meas,
                               r.delta_f,
                               r.s_irr,
                               r.bound_gap,
                               r.bound_gap_original,
                               r.w_extract};
        return QT_OK;
    });
}

} // extern "C"

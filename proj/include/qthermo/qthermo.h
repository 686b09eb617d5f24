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

/* C interface to the qthermo simulator. All objects are opaque handles;
 * every fallible call returns a qt_status and leaves details in
 * qt_last_error() (thread-local). Strings returned through char** must be
 * released with qt_string_free. */
#ifndef QTHERMO_QTHERMO_H
#define QTHERMO_QTHERMO_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(QTHERMO_BUILDING_LIBRARY)
#define QT_API __declspec(dllexport)
#else
#define QT_API __declspec(dllimport)
#endif
#else
#define QT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qt_status {
    QT_OK = 0,
    QT_ERROR_INVALID_INPUT = 1,
    QT_ERROR_DOMAIN = 2,
    QT_ERROR_INVALID_DISTRIBUTION = 3,
    QT_ERROR_NO_SUPPORT = 4,
    QT_ERROR_EMPTY_DATA = 5,
    QT_ERROR_DIVERGENCE = 6,
    QT_ERROR_NUMERICAL = 7,
    QT_ERROR_CHECK_FAILED = 8,
    QT_ERROR_USAGE = 9,
    QT_ERROR_IO = 10,
    QT_ERROR_INTERNAL = 11
} qt_status;

typedef enum qt_command { QT_COMMAND_SWEEP = 0, QT_COMMAND_FIG3 = 1, QT_COMMAND_FIG4 = 2 } qt_command;

typedef enum qt_format { QT_FORMAT_CSV = 0, QT_FORMAT_JSON = 1 } qt_format;

typedef struct qt_config qt_config;
typedef struct qt_table qt_table;
typedef struct qt_gate_report qt_gate_report;

/* All scalars for one (theta, temperature) point, signal given as a Bloch vector. */
typedef struct qt_thermo_point {
    double theta;
    double beta_inv; /* 0 at zero temperature */
    int zero_temperature;
    double p0;
    double p1;
    double shannon_nats;
    double s_signal_nats;
    double go_info_nats;
    double go_residual_nats;
    double tilde_info_nats;
    double residual_nats;
    double w_meas;
    double delta_f;
    double s_irr_nats;
    double bound_gap_nats;
    double bound_gap_original_nats;
    double w_extract;
} qt_thermo_point;

QT_API const char *qt_version(void);
QT_API const char *qt_status_string(qt_status status);
QT_API const char *qt_last_error(void);
QT_API void qt_string_free(char *text);

QT_API qt_status qt_config_create(qt_config **out);
QT_API void qt_config_destroy(qt_config *config);
/* key is a CLI flag name without "--" (e.g. "theta-steps", "beta-inv"). */
QT_API qt_status qt_config_set(qt_config *config, const char *key, const char *value);
QT_API qt_status qt_config_load_file(qt_config *config, const char *path);
/* Output path ("" means stdout) and format chosen in the config. */
QT_API qt_status qt_config_output(const qt_config *config, const char **path, qt_format *format);

/* Rows that fail numerically are kept in the table (see qt_table_failed_rows);
 * QT_OK is still returned in that case. */
QT_API qt_status qt_run(qt_command command, const qt_config *config, qt_table **out);
QT_API void qt_table_destroy(qt_table *table);
QT_API size_t qt_table_row_count(const qt_table *table);
QT_API size_t qt_table_column_count(const qt_table *table);
QT_API const char *qt_table_column_name(const qt_table *table, size_t column);
QT_API qt_status qt_table_value(const qt_table *table, size_t row, size_t column, double *out);
QT_API size_t qt_table_failed_rows(const qt_table *table);
QT_API qt_status qt_table_serialize(const qt_table *table, qt_format format, char **out_text);
QT_API qt_status qt_table_write(const qt_table *table, qt_format format, const char *path);

QT_API qt_status qt_gate_check(double perturbation, qt_gate_report **out);
QT_API void qt_gate_report_destroy(qt_gate_report *report);
QT_API int qt_gate_report_passed(const qt_gate_report *report);
QT_API size_t qt_gate_report_count(const qt_gate_report *report);
QT_API qt_status qt_gate_report_entry(const qt_gate_report *report, size_t index, const char **name,
                                      int *passed, double *value, double *threshold);
QT_API qt_status qt_gate_report_render(const qt_gate_report *report, char **out_text);

QT_API qt_status qt_tomo_demo(const qt_config *config, char **out_text);

/* beta_inv = 0 selects zero temperature. */
QT_API qt_status qt_evaluate_point(double theta, double beta_inv, double bloch_x, double bloch_y,
                                   double bloch_z, qt_thermo_point *out);

#ifdef __cplusplus
}
#endif

#endif /* QTHERMO_QTHERMO_H */

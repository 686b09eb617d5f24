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

#pragma once

#include <cstdint>
#include <numbers>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qthermo/measurement.hpp"

namespace qthermo {

enum class Mode { ideal, sampled };
enum class OutputFormat { csv, json };

/// Parameters shared by the sweep, fig3, fig4 and tomo-demo commands.
/// Keys accepted by apply_setting match the CLI flag names without "--".
struct SweepConfig {
    double theta_min = 0.0;
    double theta_max = std::numbers::pi / 8.0;
    std::int64_t theta_steps = 33;
    /// Meter temperatures beta^-1; 0 is T = 0 (beta = +inf). Empty means the
    /// command default.
    std::vector<double> beta_inv;
    Mode mode = Mode::ideal;
    std::uint64_t n0 = 100000;
    std::uint64_t shots = 10000;
    std::uint64_t resamples = 1000;
    std::uint64_t seed = 0;
    std::string signal = "D";
    std::string out;
    OutputFormat format = OutputFormat::csv;
    unsigned threads = 1;
    /// Keys set by a flag or config file (the rest are defaults).
    std::set<std::string> explicit_keys;
};

/// Throws ErrorCode::usage on unknown keys or malformed values. "beta-inv"
/// accepts a comma-separated list and the token "zero"; it replaces any
/// previous list.
void apply_setting(SweepConfig &config, std::string_view key, std::string_view value);

/// Plain-text key=value lines; '#' starts a comment. Repeated beta-inv lines
/// accumulate.
void load_config_file(SweepConfig &config, const std::string &path);

/// Structural checks (grid non-empty and in range, sampled-mode budgets).
void validate(const SweepConfig &config);

std::vector<double> theta_grid(const SweepConfig &config);

/// Named preparation (H, V, D, A, R, L, mixed) or a Bloch vector "x,y,z".
SignalState parse_signal(std::string_view text);

struct ResultRow {
    std::vector<double> values;
    bool zero_temperature = false;
    /// Non-empty when the row failed; values are then NaN.
    std::string error;
};

struct ResultTable {
    std::string command;
    std::vector<std::string> columns;
    std::vector<ResultRow> rows;
    std::vector<std::pair<std::string, std::string>> metadata;

    [[nodiscard]] std::size_t failed_rows() const noexcept;
    [[nodiscard]] std::size_t column_index(std::string_view name) const;
};

/// One row per (beta^-1, theta), ordered by beta^-1 then theta.
ResultTable cmd_sweep(const SweepConfig &config);
/// Zero-temperature Shannon entropy, GO information and residual entropy versus theta.
ResultTable cmd_fig3(const SweepConfig &config);
/// Correlation term I~ - H and bound gap over the (beta^-1, theta) grid.
ResultTable cmd_fig4(const SweepConfig &config);

struct GateCheck {
    std::string name;
    bool passed;
    double value;
    double threshold;
    std::string detail;
};

struct GateReport {
    std::vector<GateCheck> checks;

    [[nodiscard]] bool passed() const noexcept;
};

/// `perturbation` is added to one amplitude of the gate (negative control).
GateReport cmd_gate_check(double perturbation = 0.0);

std::string cmd_tomo_demo(const SweepConfig &config);

/// 15 significant digits, '.' separator, "nan"/"inf" for non-finite values.
std::string format_number(double value);

std::string to_csv(const ResultTable &table);
std::string to_json(const ResultTable &table);
std::string serialize(const ResultTable &table, OutputFormat format);
std::string render(const GateReport &report);

} // namespace qthermo

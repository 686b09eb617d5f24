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

#include "qthermo/sweep.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

#include "qthermo/error.hpp"
#include "qthermo/experiment.hpp"
#include "qthermo/parallel.hpp"
#include "qthermo/rng.hpp"
#include "qthermo/thermo.hpp"

namespace qthermo {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view text) {
    text = trim(text);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
        fail(ErrorCode::usage, "--" + std::string(key) + ": expected a number, got '" + std::string(text) + "'");
    }
    return value;
}

std::uint64_t parse_count(std::string_view key, std::string_view text) {
    const double value = parse_double(key, text);
    if (value < 0.0 || value != std::floor(value) || value > 9.0e18) {
        fail(ErrorCode::usage, "--" + std::string(key) + ": expected a nonnegative integer");
    }
    return static_cast<std::uint64_t>(value);
}

std::vector<double> parse_beta_inv_list(std::string_view text) {
    std::vector<double> values;
    std::size_t start = 0;
    while (start <= text.size()) {
        const std::size_t comma = text.find(',', start);
        const std::string_view item =
            trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (item.empty()) fail(ErrorCode::usage, "--beta-inv: empty entry");
        if (item == "zero") {
            values.push_back(0.0);
        } else {
            const double t = parse_double("beta-inv", item);
            if (t < 0.0) fail(ErrorCode::usage, "--beta-inv: temperatures must be >= 0");
            values.push_back(t);
        }
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return values;
}

const std::vector<std::string> &known_keys() {
    static const std::vector<std::string> keys{"theta-min", "theta-max", "theta-steps", "beta-inv",
                                               "mode",      "n0",        "shots",       "resamples",
                                               "seed",      "signal",    "out",         "format",
                                               "threads"};
    return keys;
}

} // namespace

void apply_setting(SweepConfig &config, std::string_view key, std::string_view value) {
    const std::string k(trim(key));
    if (std::find(known_keys().begin(), known_keys().end(), k) == known_keys().end()) {
        fail(ErrorCode::usage, "unknown setting '" + k + "'");
    }
    value = trim(value);
    if (k == "theta-min") {
        config.theta_min = parse_double(k, value);
    } else if (k == "theta-max") {
        config.theta_max = parse_double(k, value);
    } else if (k == "theta-steps") {
        config.theta_steps = static_cast<std::int64_t>(parse_count(k, value));
    } else if (k == "beta-inv") {
        config.beta_inv = parse_beta_inv_list(value);
    } else if (k == "mode") {
        if (value == "ideal") config.mode = Mode::ideal;
        else if (value == "sampled") config.mode = Mode::sampled;
        else fail(ErrorCode::usage, "--mode must be 'ideal' or 'sampled'");
    } else if (k == "n0") {
        config.n0 = parse_count(k, value);
    } else if (k == "shots") {
        config.shots = parse_count(k, value);
    } else if (k == "resamples") {
        config.resamples = parse_count(k, value);
    } else if (k == "seed") {
        std::uint64_t seed = 0;
        const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), seed);
        if (ec != std::errc() || ptr != value.data() + value.size()) {
            fail(ErrorCode::usage, "--seed: expected an unsigned 64-bit integer");
        }
        config.seed = seed;
    } else if (k == "signal") {
        parse_signal(value);
        config.signal = std::string(value);
    } else if (k == "out") {
        config.out = std::string(value);
    } else if (k == "format") {
        if (value == "csv") config.format = OutputFormat::csv;
        else if (value == "json") config.format = OutputFormat::json;
        else fail(ErrorCode::usage, "--format must be 'csv' or 'json'");
    } else if (k == "threads") {
        const std::uint64_t threads = parse_count(k, value);
        if (threads == 0 || threads > 1024) fail(ErrorCode::usage, "--threads must be in [1, 1024]");
        config.threads = static_cast<unsigned>(threads);
    }
    config.explicit_keys.insert(k);
}

void load_config_file(SweepConfig &config, const std::string &path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::io, "cannot open config file '" + path + "'");
    std::string line;
    std::vector<double> temperatures;
    bool saw_temperatures = false;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = line;
        if (const auto hash = view.find('#'); hash != std::string_view::npos) view = view.substr(0, hash);
        view = trim(view);
        if (view.empty()) continue;
        const auto eq = view.find('=');
        if (eq == std::string_view::npos) {
            fail(ErrorCode::usage, path + ":" + std::to_string(line_no) + ": expected key=value");
        }
        const std::string_view key = trim(view.substr(0, eq));
        const std::string_view value = trim(view.substr(eq + 1));
        if (key == "beta-inv") {
            const auto more = parse_beta_inv_list(value);
            temperatures.insert(temperatures.end(), more.begin(), more.end());
            saw_temperatures = true;
            continue;
        }
        try {
            apply_setting(config, key, value);
        } catch (const Error &e) {
            fail(e.code(), path + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (saw_temperatures) {
        config.beta_inv = std::move(temperatures);
        config.explicit_keys.insert("beta-inv");
    }
}

void validate(const SweepConfig &config) {
    if (config.theta_steps < 1) fail(ErrorCode::usage, "theta grid is empty (--theta-steps must be >= 1)");
    constexpr double kTol = 1e-12;
    if (config.theta_min < -kTol || config.theta_max > MeasurementStrength::kMax + kTol) {
        fail(ErrorCode::usage, "theta grid must lie within [0, pi/8]");
    }
    if (config.theta_min > config.theta_max) fail(ErrorCode::usage, "--theta-min exceeds --theta-max");
    if (config.mode == Mode::sampled) {
        if (config.n0 < 1) fail(ErrorCode::usage, "--n0 must be >= 1 in sampled mode");
        if (config.shots < 1) fail(ErrorCode::usage, "--shots must be >= 1 in sampled mode");
        if (config.resamples < 2) fail(ErrorCode::usage, "--resamples must be >= 2 in sampled mode");
    }
    parse_signal(config.signal);
}

std::vector<double> theta_grid(const SweepConfig &config) {
    validate(config);
    const auto steps = static_cast<std::size_t>(config.theta_steps);
    std::vector<double> grid(steps);
    if (steps == 1) {
        grid[0] = config.theta_min;
        return grid;
    }
    const double span = config.theta_max - config.theta_min;
    for (std::size_t i = 0; i < steps; ++i) {
        grid[i] = config.theta_min + span * static_cast<double>(i) / static_cast<double>(steps - 1);
    }
    grid.back() = config.theta_max;
    return grid;
}

SignalState parse_signal(std::string_view text) {
    text = trim(text);
    if (text.find(',') == std::string_view::npos) {
        try {
            return SignalState::named(text);
        } catch (const Error &e) {
            fail(ErrorCode::usage, std::string("--signal: ") + e.what());
        }
    }
    std::vector<double> xyz;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = text.find(',', start);
        xyz.push_back(parse_double(
            "signal", text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    if (xyz.size() != 3) fail(ErrorCode::usage, "--signal: Bloch vector needs three components");
    try {
        return SignalState::from_bloch(xyz[0], xyz[1], xyz[2]);
    } catch (const Error &e) {
        fail(ErrorCode::usage, std::string("--signal: ") + e.what());
    }
}

std::size_t ResultTable::failed_rows() const noexcept {
    return static_cast<std::size_t>(
        std::count_if(rows.begin(), rows.end(), [](const ResultRow &r) { return !r.error.empty(); }));
}

std::size_t ResultTable::column_index(std::string_view name) const {
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) fail(ErrorCode::invalid_input, "no column named '" + std::string(name) + "'");
    return static_cast<std::size_t>(it - columns.begin());
}

// ---------------------------------------------------------------------------
// Grid evaluation
// ---------------------------------------------------------------------------

namespace {

/// Quantities estimated from simulated data in sampled mode.
enum Estimate : int {
    kP0,
    kP1,
    kShannon,
    kGoInfo,
    kGoResidual,
    kTildeInfo,
    kResidual,
    kCorrelation,
    kWMeas,
    kDeltaF,
    kBoundGap,
    kWExtract,
    kEstimateCount,
    kExact = -1,
};

struct Column {
    std::string name;
    std::function<double(const ThermoReport &)> ideal;
    int estimate;
};

struct GridPoint {
    double beta_inv;
    double theta;
};

std::vector<double> sorted_temperatures(const SweepConfig &config, std::vector<double> fallback) {
    std::vector<double> temps = config.beta_inv.empty() ? std::move(fallback) : config.beta_inv;
    std::stable_sort(temps.begin(), temps.end());
    return temps;
}

std::vector<double> run_trial(const GridPoint &point, const SignalState &signal, const SweepConfig &config,
                              std::uint64_t subseed) {
    const MeasurementStrength theta(point.theta);
    const InverseTemperature beta = InverseTemperature::from_temperature(point.beta_inv);
    const ThermalMeter meter = gibbs(beta);
    const ConditionalEstimate est = conditional_state_pipeline(
        theta, beta, signal, {config.shots, static_cast<double>(config.n0), subseed, false});

    std::vector<double> out(kEstimateCount);
    out[kP0] = est.p_hat[0];
    out[kP1] = est.p_hat[1];
    out[kShannon] = est.shannon;
    out[kGoInfo] = est.go_info;
    out[kGoResidual] = est.go_residual;
    out[kTildeInfo] = est.tilde_info;
    out[kResidual] = est.residual;
    out[kCorrelation] = est.tilde_info - est.shannon;
    out[kWMeas] = measurement_work(est.p_hat[1], meter);
    out[kDeltaF] = free_energy_change(est.p_hat[1], meter);
    out[kBoundGap] = irreversible_entropy(meter) - (est.tilde_info - est.shannon);
    out[kWExtract] = extractable_work(est.shannon, beta);
    return out;
}

std::uint64_t point_seed(std::uint64_t seed, const GridPoint &point) {
    const auto theta_bits = std::bit_cast<std::uint64_t>(point.theta + 0.0);
    const auto temp_bits = std::bit_cast<std::uint64_t>(point.beta_inv + 0.0);
    return rng::derive(rng::derive(seed, rng::stream::grid_point, theta_bits), rng::stream::grid_point,
                       temp_bits);
}

std::string join_numbers(const std::vector<double> &values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ',';
        out += format_number(values[i]);
    }
    return out;
}

std::string defaulted_budget(const SweepConfig &config) {
    std::string out;
    for (const char *key : {"n0", "shots", "resamples", "seed"}) {
        if (config.explicit_keys.count(key)) continue;
        if (!out.empty()) out += ',';
        out += key;
    }
    return out.empty() ? "none" : out;
}

ResultTable evaluate_grid(const std::string &command, const SweepConfig &config,
                          const std::vector<double> &temperatures, const std::vector<Column> &leading,
                          const std::vector<Column> &columns, bool ideal_copies) {
    const std::vector<double> thetas = theta_grid(config);
    const SignalState signal = parse_signal(config.signal);
    const bool sampled = config.mode == Mode::sampled;

    ResultTable table;
    table.command = command;
    for (const Column &c : leading) table.columns.push_back(c.name);
    if (sampled && ideal_copies) {
        for (const Column &c : columns) table.columns.push_back(c.name + "_ideal");
    }
    for (const Column &c : columns) {
        table.columns.push_back(c.name);
        if (sampled && c.estimate != kExact) table.columns.push_back(c.name + "_err");
    }

    std::vector<GridPoint> points;
    for (double t : temperatures)
        for (double th : thetas) points.push_back({t, th});

    table.rows.resize(points.size());
    detail::parallel_for(points.size(), config.threads, [&](std::size_t i) {
        const GridPoint &point = points[i];
        ResultRow &row = table.rows[i];
        row.zero_temperature = point.beta_inv == 0.0;
        try {
            const ThermoReport report = evaluate(MeasurementStrength(point.theta),
                                                 InverseTemperature::from_temperature(point.beta_inv), signal);
            std::vector<MonteCarloEstimate> mc;
            if (sampled) {
                const TrialFunction trial = [&](std::uint64_t subseed) {
                    return run_trial(point, signal, config, subseed);
                };
                mc = monte_carlo_trials(trial, kEstimateCount, config.resamples,
                                        point_seed(config.seed, point), 1);
            }
            for (const Column &c : leading) row.values.push_back(c.ideal(report));
            if (sampled && ideal_copies) {
                for (const Column &c : columns) row.values.push_back(c.ideal(report));
            }
            for (const Column &c : columns) {
                if (!sampled || c.estimate == kExact) {
                    row.values.push_back(c.ideal(report));
                } else {
                    row.values.push_back(mc[static_cast<std::size_t>(c.estimate)].mean);
                    row.values.push_back(mc[static_cast<std::size_t>(c.estimate)].std_error);
                }
            }
        } catch (const Error &e) {
            row.values.assign(table.columns.size(), std::numeric_limits<double>::quiet_NaN());
            row.error = e.what();
        }
    });

    auto &meta = table.metadata;
    meta.emplace_back("command", command);
    meta.emplace_back("mode", sampled ? "sampled" : "ideal");
    meta.emplace_back("signal", config.signal);
    meta.emplace_back("theta_min", format_number(config.theta_min));
    meta.emplace_back("theta_max", format_number(config.theta_max));
    meta.emplace_back("theta_steps", std::to_string(config.theta_steps));
    meta.emplace_back("beta_inv", join_numbers(temperatures));
    meta.emplace_back("zero_temperature_encoding", "beta_inv=0 means T=0 (beta=+inf)");
    meta.emplace_back("entropy_unit", "nats");
    meta.emplace_back("w_extract_convention", "beta^-1 (1 - H/ln2), H converted to bits");
    meta.emplace_back("meter_hamiltonian", "eps0=0,eps1=1,k_B=1");
    if (sampled) {
        meta.emplace_back("seed", std::to_string(config.seed));
        meta.emplace_back("rng_algorithm", std::string(rng::kAlgorithm));
        meta.emplace_back("n0", std::to_string(config.n0));
        meta.emplace_back("shots_per_axis", std::to_string(config.shots));
        meta.emplace_back("resamples", std::to_string(config.resamples));
        meta.emplace_back("defaulted", defaulted_budget(config));
        meta.emplace_back("noise_model", "poisson counts, binomial pauli tomography");
    }
    return table;
}

Column exact(std::string name, std::function<double(const ThermoReport &)> f) {
    return {std::move(name), std::move(f), kExact};
}

Column estimated(std::string name, std::function<double(const ThermoReport &)> f, Estimate e) {
    return {std::move(name), std::move(f), e};
}

std::vector<double> default_fig4_temperatures() {
    std::vector<double> temps;
    for (int i = 0; i <= 20; ++i) temps.push_back(0.25 * i);
    return temps;
}

} // namespace

ResultTable cmd_sweep(const SweepConfig &config) {
    const std::vector<Column> leading{
        exact("theta_rad", [](const ThermoReport &r) { return r.theta; }),
        exact("beta_inv", [](const ThermoReport &r) { return r.beta.temperature(); }),
    };
    const std::vector<Column> columns{
        estimated("p0", [](const ThermoReport &r) { return r.p[0]; }, kP0),
        estimated("p1", [](const ThermoReport &r) { return r.p[1]; }, kP1),
        estimated("shannon_nats", [](const ThermoReport &r) { return r.h_shannon; }, kShannon),
        exact("s_signal_nats", [](const ThermoReport &r) { return r.s_signal; }),
        estimated("go_info_nats", [](const ThermoReport &r) { return r.go_info; }, kGoInfo),
        estimated("tilde_info_nats", [](const ThermoReport &r) { return r.tilde_info; }, kTildeInfo),
        estimated("residual_nats", [](const ThermoReport &r) { return r.residual_term; }, kResidual),
        estimated("w_meas", [](const ThermoReport &r) { return r.w_meas; }, kWMeas),
        estimated("delta_f", [](const ThermoReport &r) { return r.delta_f; }, kDeltaF),
        exact("s_irr_nats", [](const ThermoReport &r) { return r.s_irr; }),
        estimated("bound_gap_nats", [](const ThermoReport &r) { return r.bound_gap; }, kBoundGap),
        estimated("w_extract", [](const ThermoReport &r) { return r.w_extract; }, kWExtract),
    };
    return evaluate_grid("sweep", config, sorted_temperatures(config, {0.0}), leading, columns, false);
}

ResultTable cmd_fig3(const SweepConfig &config) {
    const std::vector<Column> leading{exact("theta_rad", [](const ThermoReport &r) { return r.theta; })};
    const std::vector<Column> columns{
        estimated("shannon_nats", [](const ThermoReport &r) { return r.h_shannon; }, kShannon),
        estimated("go_info_nats", [](const ThermoReport &r) { return r.go_info; }, kGoInfo),
        estimated("residual_nats", [](const ThermoReport &r) { return r.go_residual; }, kGoResidual),
    };
    return evaluate_grid("fig3", config, {0.0}, leading, columns, true);
}

ResultTable cmd_fig4(const SweepConfig &config) {
    const std::vector<Column> leading{
        exact("beta_inv", [](const ThermoReport &r) { return r.beta.temperature(); }),
        exact("theta_rad", [](const ThermoReport &r) { return r.theta; }),
    };
    const std::vector<Column> columns{
        estimated("correlation_nats", [](const ThermoReport &r) { return r.tilde_info - r.h_shannon; },
                  kCorrelation),
        estimated("bound_gap_nats", [](const ThermoReport &r) { return r.bound_gap; }, kBoundGap),
    };
    return evaluate_grid("fig4", config, sorted_temperatures(config, default_fig4_temperatures()), leading,
                         columns, true);
}

// ---------------------------------------------------------------------------
// Gate check
// ---------------------------------------------------------------------------

bool GateReport::passed() const noexcept {
    return std::all_of(checks.begin(), checks.end(), [](const GateCheck &c) { return c.passed; });
}

GateReport cmd_gate_check(double perturbation) {
    GateReport report;
    auto add = [&](std::string name, double value, double threshold, std::string detail) {
        report.checks.push_back({std::move(name), value <= threshold, value, threshold, std::move(detail)});
    };

    PhysicalGate gate = physical_gate();
    gate.op(3, 0) += perturbation;

    const std::array<const char *, 4> labels{"HH", "HV", "VH", "VV"};
    const std::array<std::pair<std::size_t, double>, 4> expected{
        {{3, 1.0 / 3.0}, {2, 1.0 / 3.0}, {1, 1.0 / 3.0}, {0, -1.0 / 3.0}}};
    for (std::size_t in = 0; in < 4; ++in) {
        double deviation = 0.0;
        for (std::size_t out = 0; out < 4; ++out) {
            const double target = out == expected[in].first ? expected[in].second : 0.0;
            deviation = std::max(deviation, std::abs(gate.op(out, in) - target));
        }
        add(std::string("ppbs_table_") + labels[in], deviation, 0.0, "exact gate table mapping");
    }
    add("ppbs_scaled_unitarity", gate_unitarity_error(gate), 1e-12, "max |(3A)^dag (3A) - I|");

    double success_dev = 0.0;
    for (std::size_t in = 0; in < 4; ++in) {
        ComplexVector ket(4, Complex{0.0, 0.0});
        ket[in] = 1.0;
        try {
            const PostSelected ps = ppbs_apply(DensityOperator::state(ComplexMatrix::projector(ket)), gate);
            success_dev = std::max(success_dev, std::abs(ps.success_probability - 1.0 / 9.0));
        } catch (const Error &) {
            success_dev = std::numeric_limits<double>::infinity();
        }
    }
    add("ppbs_success_probability", success_dev, 1e-12, "max |P_success - 1/9| over basis inputs");

    const ComplexMatrix cz = csign_unitary();
    add("csign_unitarity", max_abs_diff(cz.dagger() * cz, ComplexMatrix::identity(4)), 1e-12,
        "max |U^dag U - I|");

    constexpr std::size_t kGrid = 1000;
    const ComplexMatrix id = ComplexMatrix::identity(2);
    const std::array<ComplexVector, 6> probes{kets::h(), kets::v(), kets::d(), kets::a(), kets::r(), kets::l()};
    double completeness = 0.0;
    double effect_consistency = 0.0;
    double circuit_effects = 0.0;
    double circuit_states = 0.0;
    for (std::size_t i = 0; i < kGrid; ++i) {
        const MeasurementStrength theta(MeasurementStrength::kMax * static_cast<double>(i) /
                                        static_cast<double>(kGrid - 1));
        const KrausSet k = build_kraus(theta);
        completeness = std::max(completeness, max_abs_diff(k.e[0] + k.e[1], id));
        const auto from_h = kraus_from_circuit(theta, MeterPrep::horizontal);
        const auto from_v = kraus_from_circuit(theta, MeterPrep::vertical);
        for (std::size_t o = 0; o < 2; ++o) {
            effect_consistency = std::max({effect_consistency, max_abs_diff(k.m[o].dagger() * k.m[o], k.e[o]),
                                           max_abs_diff(k.n[o].dagger() * k.n[o], k.e[o])});
            circuit_effects = std::max({circuit_effects, max_abs_diff(from_h[o].dagger() * from_h[o], k.e[o]),
                                        max_abs_diff(from_v[o].dagger() * from_v[o], k.e[o])});
            for (const ComplexVector &probe : probes) {
                const ComplexMatrix rho = ComplexMatrix::projector(probe);
                circuit_states = std::max(
                    {circuit_states,
                     max_abs_diff(from_h[o] * rho * from_h[o].dagger(), k.m[o] * rho * k.m[o].dagger()),
                     max_abs_diff(from_v[o] * rho * from_v[o].dagger(), k.n[o] * rho * k.n[o].dagger())});
            }
        }
    }
    add("kraus_completeness", completeness, 1e-12, "max |E_0 + E_1 - I| over 1000 theta points");
    add("kraus_effect_consistency", effect_consistency, 1e-12, "max |M^dag M - E|, |N^dag N - E|");
    add("circuit_effects_match", circuit_effects, 1e-12, "circuit K^dag K vs closed-form E, both meters");
    add("circuit_branch_states_match", circuit_states, 1e-12,
        "circuit K rho K^dag vs closed form on six probe states, both meters");
    return report;
}

// ---------------------------------------------------------------------------
// Tomography demo
// ---------------------------------------------------------------------------

namespace {

void print_matrix(std::ostringstream &os, const ComplexMatrix &m) {
    for (std::size_t r = 0; r < m.dim(); ++r) {
        os << "    [";
        for (std::size_t c = 0; c < m.dim(); ++c) {
            if (c) os << ", ";
            os << format_number(m(r, c).real());
            const double im = m(r, c).imag();
            os << (im < 0.0 ? " - " : " + ") << format_number(std::abs(im)) << "i";
        }
        os << "]\n";
    }
}

} // namespace

std::string cmd_tomo_demo(const SweepConfig &config) {
    const std::vector<double> thetas = theta_grid(config);
    const std::vector<double> temperatures = sorted_temperatures(config, {0.0});
    const SignalState signal = parse_signal(config.signal);
    const bool exact_limit = config.mode == Mode::ideal;

    std::ostringstream os;
    os << "# tomo-demo signal=" << config.signal << " mode=" << (exact_limit ? "ideal" : "sampled");
    if (!exact_limit) {
        os << " seed=" << config.seed << " n0=" << config.n0 << " shots_per_axis=" << config.shots
           << " rng_algorithm=" << rng::kAlgorithm;
    }
    os << "\n";
    for (double t : temperatures) {
        for (double th : thetas) {
            const GridPoint point{t, th};
            const MeasurementStrength theta(th);
            const InverseTemperature beta = InverseTemperature::from_temperature(t);
            const PipelineSettings settings{config.shots, static_cast<double>(config.n0),
                                            point_seed(config.seed, point), exact_limit};
            const ConditionalEstimate est = conditional_state_pipeline(theta, beta, signal, settings);
            const ConditionalOutputState ideal = conditional_output_state(signal, build_kraus(theta), gibbs(beta));

            os << "theta_rad=" << format_number(th) << " beta_inv=" << format_number(t) << "\n";
            if (!exact_limit) {
                os << "  counts HD=" << est.counts.n_hd << " VD=" << est.counts.n_vd << " HA=" << est.counts.n_ha
                   << " VA=" << est.counts.n_va << "\n";
            }
            for (std::size_t k = 0; k < 2; ++k) {
                os << "  outcome " << k << (k == 0 ? " (D)" : " (A)") << ": p_hat=" << format_number(est.p_hat[k])
                   << " p_ideal=" << format_number(ideal.probability[k]) << "\n";
                if (!est.rho_hat[k]) {
                    os << "    no support\n";
                    continue;
                }
                const ComplexMatrix target = ideal.rho_tilde[k] * (1.0 / ideal.probability[k]);
                os << "  rho_hat:\n";
                print_matrix(os, est.rho_hat[k]->matrix());
                os << "  max |rho_hat - rho_ideal| = " << format_number(max_abs_diff(est.rho_hat[k]->matrix(), target))
                   << "\n";
            }
            os << "  shannon_nats=" << format_number(est.shannon) << " residual_nats=" << format_number(est.residual)
               << " tilde_info_nats=" << format_number(est.tilde_info) << "\n";
        }
    }
    return os.str();
}

} // namespace qthermo

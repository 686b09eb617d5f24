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

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "qthermo/linalg.hpp"
#include "qthermo/measurement.hpp"
#include "qthermo/thermo.hpp"

namespace qthermo {

// ---------------------------------------------------------------------------
// Post-selected PPBS gate
// ---------------------------------------------------------------------------

/// Non-unitary two-photon operator realised by the partially polarizing beam
/// splitters after post-selection on coincidences:
///   |HH> -> 1/3 |VV>, |HV> -> 1/3 |VH>, |VH> -> 1/3 |HV>, |VV> -> -1/3 |HH>
struct PhysicalGate {
    ComplexMatrix op;
    double amplitude_scale = 1.0 / 3.0;
};

PhysicalGate physical_gate();

struct PostSelected {
    DensityOperator state;
    double success_probability;
};

/// Apply the gate to a two-photon state and renormalize. Throws
/// ErrorCode::no_support when the success probability is below 1e-15.
PostSelected ppbs_apply(const DensityOperator &rho, const PhysicalGate &gate = physical_gate());

/// max |(s A)^dag (s A) - I| with s = 1 / amplitude_scale.
double gate_unitarity_error(const PhysicalGate &gate);

// ---------------------------------------------------------------------------
// Coincidence counts
// ---------------------------------------------------------------------------

struct GibbsWeights {
    double w_h = 1.0;
    double w_v = 0.0;
};

/// Expected coincidences, cells[signal H/V][meter D/A].
struct ExpectedCounts {
    std::array<std::array<double, 2>, 2> cells{};

    [[nodiscard]] double total() const noexcept;
};

struct CoincidenceCounts {
    std::uint64_t n_hd = 0;
    std::uint64_t n_vd = 0;
    std::uint64_t n_ha = 0;
    std::uint64_t n_va = 0;

    [[nodiscard]] std::uint64_t total() const noexcept { return n_hd + n_vd + n_ha + n_va; }
};

/// Joint Born probabilities from the ideal circuit for each meter
/// preparation, mixed with `weights` and scaled by n0.
ExpectedCounts expected_counts(MeasurementStrength theta, GibbsWeights weights, const SignalState &rho,
                               double n0);

/// Independent Poisson draw per cell. Cell i uses sub-seed derive(seed, count_cell, i).
CoincidenceCounts sample_counts(const ExpectedCounts &expected, std::uint64_t seed);

struct MeterProbabilities {
    double p_d;
    double p_a;
};

/// p_D = (N_HD + N_VD)/N0, p_A = (N_HA + N_VA)/N0.
MeterProbabilities probs_from_counts(const CoincidenceCounts &counts);

// ---------------------------------------------------------------------------
// Tomography
// ---------------------------------------------------------------------------

enum class PauliAxis : std::size_t { x = 0, y = 1, z = 2 };

struct AxisRecord {
    std::uint64_t shots = 0;
    std::uint64_t plus_counts = 0;
};

struct TomographyRecord {
    std::array<AxisRecord, 3> axes{};
};

/// (1 + Tr[rho sigma_i]) / 2 for i = x, y, z.
std::array<double, 3> exact_plus_probabilities(const DensityOperator &rho);

/// Binomial outcomes per Pauli axis; axis i uses sub-seed derive(seed, tomography_axis, i).
TomographyRecord simulate_tomography(const DensityOperator &rho, std::uint64_t shots_per_axis,
                                     std::uint64_t seed);

/// Linear inversion, then eigenvalue truncation (negatives clamped to 0,
/// trace renormalized to 1).
DensityOperator reconstruct(const TomographyRecord &record);
DensityOperator reconstruct_from_frequencies(const std::array<double, 3> &plus_fraction);

// ---------------------------------------------------------------------------
// Monte Carlo
// ---------------------------------------------------------------------------

struct MonteCarloEstimate {
    double mean = 0.0;
    /// Sample standard deviation over resamples.
    double std_error = 0.0;
    std::size_t resamples = 0;
    std::uint64_t seed = 0;
};

using CountsPipeline = std::function<double(const CoincidenceCounts &)>;
/// One resample: receives its sub-seed, returns one value per tracked output.
using TrialFunction = std::function<std::vector<double>(std::uint64_t)>;

/// Re-draws Poisson counts from `base` for each resample r (sub-seed
/// derive(seed, resample, r)) and summarizes the pipeline output.
MonteCarloEstimate monte_carlo(const CountsPipeline &pipeline, const ExpectedCounts &base,
                               std::size_t resamples, std::uint64_t seed, unsigned threads = 1);

/// Generalization of monte_carlo over arbitrary per-resample trials with
/// several outputs. Results are gathered by resample index, so they do not
/// depend on `threads`.
std::vector<MonteCarloEstimate> monte_carlo_trials(const TrialFunction &trial, std::size_t outputs,
                                                   std::size_t resamples, std::uint64_t seed,
                                                   unsigned threads = 1);

// ---------------------------------------------------------------------------
// Conditional-state pipeline
// ---------------------------------------------------------------------------

struct PipelineSettings {
    std::uint64_t shots = 10000;
    double n0 = 1e5;
    std::uint64_t seed = 0;
    /// Use analytic probabilities instead of sampling (infinite-statistics limit).
    bool exact = false;
};

struct ConditionalEstimate {
    /// Reconstructed normalized output for each outcome; empty when the ideal
    /// branch has no support.
    std::array<std::optional<DensityOperator>, 2> rho_hat;
    /// Same, for the pure |H> meter alone (the branch entering I).
    std::array<std::optional<DensityOperator>, 2> rho_hat_pure_meter;
    std::array<double, 2> p_hat{};
    CoincidenceCounts counts;
    double shannon = 0.0;
    double residual = 0.0;
    double tilde_info = 0.0;
    double go_residual = 0.0;
    double go_info = 0.0;
};

ConditionalEstimate conditional_state_pipeline(MeasurementStrength theta, InverseTemperature beta,
                                               const SignalState &rho, const PipelineSettings &settings,
                                               const MeterHamiltonian &hamiltonian = {});

} // namespace qthermo

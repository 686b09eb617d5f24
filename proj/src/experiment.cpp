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

#include "qthermo/experiment.hpp"

#include <cmath>
#include <numeric>
#include <string>

#include "qthermo/error.hpp"
#include "qthermo/parallel.hpp"
#include "qthermo/rng.hpp"

namespace qthermo {

PhysicalGate physical_gate() {
    constexpr double third = 1.0 / 3.0;
    ComplexMatrix op(4);
    // Columns are the images of HH, HV, VH, VV.
    op(3, 0) = third;
    op(2, 1) = third;
    op(1, 2) = third;
    op(0, 3) = -third;
    return {op, third};
}

PostSelected ppbs_apply(const DensityOperator &rho, const PhysicalGate &gate) {
    if (rho.dim() != 4) fail(ErrorCode::invalid_input, "PPBS gate acts on two-photon states");
    ComplexMatrix out = gate.op * rho.matrix() * gate.op.dagger();
    const double success = out.trace().real();
    if (success < 1e-15) fail(ErrorCode::no_support, "post-selection success probability is zero");
    out *= 1.0 / success;
    return {DensityOperator::state(out), success};
}

double gate_unitarity_error(const PhysicalGate &gate) {
    const ComplexMatrix scaled = (1.0 / gate.amplitude_scale) * gate.op;
    return max_abs_diff(scaled.dagger() * scaled, ComplexMatrix::identity(4));
}

double ExpectedCounts::total() const noexcept {
    return cells[0][0] + cells[0][1] + cells[1][0] + cells[1][1];
}

ExpectedCounts expected_counts(MeasurementStrength theta, GibbsWeights weights, const SignalState &rho,
                               double n0) {
    if (!(n0 > 0.0) || !std::isfinite(n0)) fail(ErrorCode::invalid_input, "n0 must be positive");
    if (weights.w_h < 0.0 || weights.w_v < 0.0 || std::abs(weights.w_h + weights.w_v - 1.0) > 1e-12) {
        fail(ErrorCode::invalid_input, "meter weights must be nonnegative and sum to 1");
    }

    ExpectedCounts table;
    const std::array<std::pair<MeterPrep, double>, 2> preps{
        {{MeterPrep::horizontal, weights.w_h}, {MeterPrep::vertical, weights.w_v}}};
    const std::array<ComplexVector, 2> signal_basis{kets::h(), kets::v()};

    for (const auto &[prep, weight] : preps) {
        if (weight == 0.0) continue;
        const ComplexVector meter = prep == MeterPrep::horizontal ? kets::h() : kets::v();
        const ComplexMatrix u = coupling_unitary(theta, prep);
        const ComplexMatrix joint_in = tensor(rho.matrix(), ComplexMatrix::projector(meter));
        const ComplexMatrix joint_out = u * joint_in * u.dagger();
        for (std::size_t s = 0; s < 2; ++s) {
            for (int k = 0; k < 2; ++k) {
                const ComplexVector ket = tensor(signal_basis[s], readout_ket(k));
                const double prob = std::max(0.0, expectation(ket, joint_out).real());
                table.cells[s][static_cast<std::size_t>(k)] += weight * prob * n0;
            }
        }
    }
    return table;
}

CoincidenceCounts sample_counts(const ExpectedCounts &expected, std::uint64_t seed) {
    std::array<std::uint64_t, 4> drawn{};
    const std::array<double, 4> means{expected.cells[0][0], expected.cells[1][0], expected.cells[0][1],
                                      expected.cells[1][1]};
    for (std::size_t i = 0; i < 4; ++i) {
        if (!(means[i] >= 0.0) || !std::isfinite(means[i])) {
            fail(ErrorCode::invalid_input, "expected counts must be finite and nonnegative");
        }
        if (means[i] == 0.0) continue;
        auto engine = rng::make_engine(rng::derive(seed, rng::stream::count_cell, i));
        std::poisson_distribution<std::uint64_t> poisson(means[i]);
        drawn[i] = poisson(engine);
    }
    return {drawn[0], drawn[1], drawn[2], drawn[3]};
}

MeterProbabilities probs_from_counts(const CoincidenceCounts &counts) {
    const std::uint64_t n0 = counts.total();
    if (n0 == 0) fail(ErrorCode::empty_data, "no coincidences recorded");
    const double total = static_cast<double>(n0);
    return {static_cast<double>(counts.n_hd + counts.n_vd) / total,
            static_cast<double>(counts.n_ha + counts.n_va) / total};
}

std::array<double, 3> exact_plus_probabilities(const DensityOperator &rho) {
    if (rho.dim() != 2) fail(ErrorCode::invalid_input, "tomography is defined for a single qubit");
    const std::array<ComplexMatrix, 3> paulis{pauli::x(), pauli::y(), pauli::z()};
    std::array<double, 3> plus{};
    for (std::size_t i = 0; i < 3; ++i) {
        const double r = (paulis[i] * rho.matrix()).trace().real();
        plus[i] = std::clamp(0.5 * (1.0 + r), 0.0, 1.0);
    }
    return plus;
}

TomographyRecord simulate_tomography(const DensityOperator &rho, std::uint64_t shots_per_axis,
                                     std::uint64_t seed) {
    if (shots_per_axis == 0) fail(ErrorCode::empty_data, "tomography needs at least one shot per axis");
    const auto plus = exact_plus_probabilities(rho);
    TomographyRecord record;
    for (std::size_t i = 0; i < 3; ++i) {
        auto engine = rng::make_engine(rng::derive(seed, rng::stream::tomography_axis, i));
        std::binomial_distribution<std::uint64_t> binomial(shots_per_axis, plus[i]);
        record.axes[i] = {shots_per_axis, binomial(engine)};
    }
    return record;
}

DensityOperator reconstruct_from_frequencies(const std::array<double, 3> &plus_fraction) {
    const std::array<ComplexMatrix, 3> paulis{pauli::x(), pauli::y(), pauli::z()};
    ComplexMatrix linear = ComplexMatrix::identity(2);
    for (std::size_t i = 0; i < 3; ++i) {
        if (!(plus_fraction[i] >= 0.0 && plus_fraction[i] <= 1.0)) {
            fail(ErrorCode::invalid_input, "plus fraction outside [0, 1]");
        }
        linear += (2.0 * plus_fraction[i] - 1.0) * paulis[i];
    }
    linear *= 0.5;

    EigenSystem eig = hermitian_eigensystem(linear);
    std::vector<double> clamped(eig.values.values().begin(), eig.values.values().end());
    double total = 0.0;
    for (double &lambda : clamped) {
        lambda = std::max(lambda, 0.0);
        total += lambda;
    }
    for (double &lambda : clamped) lambda /= total;

    ComplexMatrix physical(2);
    for (std::size_t i = 0; i < clamped.size(); ++i) {
        if (clamped[i] == 0.0) continue;
        physical += clamped[i] * ComplexMatrix::projector(eig.vectors[i]);
    }
    return DensityOperator::state(physical);
}

DensityOperator reconstruct(const TomographyRecord &record) {
    std::array<double, 3> fractions{};
    for (std::size_t i = 0; i < 3; ++i) {
        const AxisRecord &axis = record.axes[i];
        if (axis.shots == 0) fail(ErrorCode::empty_data, "tomography axis has no shots");
        if (axis.plus_counts > axis.shots) fail(ErrorCode::invalid_input, "plus counts exceed shots");
        fractions[i] = static_cast<double>(axis.plus_counts) / static_cast<double>(axis.shots);
    }
    return reconstruct_from_frequencies(fractions);
}

std::vector<MonteCarloEstimate> monte_carlo_trials(const TrialFunction &trial, std::size_t outputs,
                                                   std::size_t resamples, std::uint64_t seed,
                                                   unsigned threads) {
    if (resamples < 2) fail(ErrorCode::invalid_input, "Monte Carlo needs at least two resamples");
    std::vector<std::vector<double>> values(resamples);
    detail::parallel_for(resamples, threads, [&](std::size_t r) {
        try {
            values[r] = trial(rng::derive(seed, rng::stream::resample, r));
        } catch (const Error &e) {
            throw Error(e.code(), "resample " + std::to_string(r) + ": " + e.what());
        }
        if (values[r].size() != outputs) {
            fail(ErrorCode::invalid_input, "resample " + std::to_string(r) + ": trial returned " +
                                               std::to_string(values[r].size()) + " outputs");
        }
    });

    std::vector<MonteCarloEstimate> estimates(outputs);
    const double n = static_cast<double>(resamples);
    for (std::size_t o = 0; o < outputs; ++o) {
        double sum = 0.0;
        for (const auto &row : values) sum += row[o];
        const double mean = sum / n;
        double ss = 0.0;
        for (const auto &row : values) ss += (row[o] - mean) * (row[o] - mean);
        estimates[o] = {mean, std::sqrt(ss / (n - 1.0)), resamples, seed};
    }
    return estimates;
}

MonteCarloEstimate monte_carlo(const CountsPipeline &pipeline, const ExpectedCounts &base,
                               std::size_t resamples, std::uint64_t seed, unsigned threads) {
    const TrialFunction trial = [&](std::uint64_t subseed) {
        return std::vector<double>{pipeline(sample_counts(base, subseed))};
    };
    return monte_carlo_trials(trial, 1, resamples, seed, threads).front();
}

namespace {

std::optional<DensityOperator> tomograph(const ComplexMatrix &branch, const PipelineSettings &settings,
                                         std::uint64_t index) {
    const double p = branch.trace().real();
    if (p < 1e-15) return std::nullopt;
    const DensityOperator normalized = DensityOperator::state(branch * (1.0 / p));
    if (settings.exact) return reconstruct_from_frequencies(exact_plus_probabilities(normalized));
    const std::uint64_t seed = rng::derive(settings.seed, rng::stream::pipeline_tomography, index);
    return reconstruct(simulate_tomography(normalized, settings.shots, seed));
}

double estimated_residual(const std::array<std::optional<DensityOperator>, 2> &states,
                          const std::array<double, 2> &p_hat) {
    double acc = 0.0;
    for (std::size_t k = 0; k < 2; ++k) {
        if (!states[k] || p_hat[k] <= 0.0) continue;
        acc += operator_entropy_term(DensityOperator::branch(p_hat[k] * states[k]->matrix()));
    }
    return acc;
}

} // namespace

ConditionalEstimate conditional_state_pipeline(MeasurementStrength theta, InverseTemperature beta,
                                               const SignalState &rho, const PipelineSettings &settings,
                                               const MeterHamiltonian &hamiltonian) {
    const KrausSet kraus = build_kraus(theta);
    const ThermalMeter meter = gibbs(beta, hamiltonian);
    const ConditionalOutputState ideal = conditional_output_state(rho, kraus, meter);

    ConditionalEstimate est;
    if (settings.exact) {
        est.p_hat = ideal.probability;
    } else {
        const ExpectedCounts expected = expected_counts(theta, {meter.w_h, meter.w_v}, rho, settings.n0);
        est.counts = sample_counts(expected, rng::derive(settings.seed, rng::stream::pipeline_counts));
        const MeterProbabilities probs = probs_from_counts(est.counts);
        est.p_hat = {probs.p_d, probs.p_a};
    }

    for (std::size_t k = 0; k < 2; ++k) {
        est.rho_hat[k] = tomograph(ideal.rho_tilde[k], settings, k);
        const ComplexMatrix pure_branch = kraus.m[k] * rho.matrix() * kraus.m[k].dagger();
        est.rho_hat_pure_meter[k] = tomograph(pure_branch, settings, 2 + k);
    }

    const double s_signal = von_neumann_entropy(rho.rho());
    est.shannon = shannon_entropy(est.p_hat);
    est.residual = estimated_residual(est.rho_hat, est.p_hat);
    est.go_residual = estimated_residual(est.rho_hat_pure_meter, est.p_hat);
    est.tilde_info = s_signal + est.shannon + est.residual;
    est.go_info = s_signal + est.shannon + est.go_residual;
    return est;
}

} // namespace qthermo

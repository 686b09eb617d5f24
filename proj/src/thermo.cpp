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

#include "qthermo/thermo.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qthermo/error.hpp"

namespace qthermo {

namespace {

void require_probability(double p, const char *what) {
    if (!(p >= -1e-12 && p <= 1.0 + 1e-12)) {
        fail(ErrorCode::invalid_input, std::string(what) + ": probability out of [0, 1]");
    }
}

// ln(1 + e^{-beta gap}) for finite beta.
double log_one_plus_boltzmann(double beta, double gap) { return std::log1p(std::exp(-beta * gap)); }

} // namespace

InverseTemperature InverseTemperature::from_beta(double beta) {
    if (std::isinf(beta) && beta > 0.0) return zero_temperature();
    if (!(beta >= 0.0) || !std::isfinite(beta)) {
        fail(ErrorCode::invalid_input, "inverse temperature must be >= 0, got " + std::to_string(beta));
    }
    return InverseTemperature(beta, false);
}

InverseTemperature InverseTemperature::from_temperature(double temperature) {
    if (!(temperature >= 0.0)) {
        fail(ErrorCode::invalid_input, "temperature must be >= 0, got " + std::to_string(temperature));
    }
    if (temperature == 0.0) return zero_temperature();
    if (std::isinf(temperature)) return InverseTemperature(0.0, false);
    return InverseTemperature(1.0 / temperature, false);
}

double InverseTemperature::temperature() const noexcept {
    if (infinite_) return 0.0;
    if (beta_ == 0.0) return std::numeric_limits<double>::infinity();
    return 1.0 / beta_;
}

MeterHamiltonian::MeterHamiltonian(double eps0, double eps1) : eps0_(eps0), eps1_(eps1) {
    if (!std::isfinite(eps0) || !std::isfinite(eps1) || !(eps1 > eps0)) {
        fail(ErrorCode::invalid_input, "meter Hamiltonian requires finite eps1 > eps0");
    }
}

ThermalMeter gibbs(InverseTemperature beta, const MeterHamiltonian &hamiltonian) {
    if (beta.is_zero_temperature()) {
        const double eps0 = hamiltonian.eps0();
        const double z = eps0 == 0.0 ? 1.0 : (eps0 > 0.0 ? 0.0 : std::numeric_limits<double>::infinity());
        return {beta, hamiltonian, z, 1.0, 0.0};
    }
    const double b = beta.beta();
    const double boltzmann = std::exp(-b * hamiltonian.gap());
    const double w_h = 1.0 / (1.0 + boltzmann);
    const double w_v = boltzmann / (1.0 + boltzmann);
    const double z = std::exp(-b * hamiltonian.eps0()) * (1.0 + boltzmann);
    return {beta, hamiltonian, z, w_h, w_v};
}

double mean_energy(const ThermalMeter &meter) {
    return meter.w_h * meter.hamiltonian.eps0() + meter.w_v * meter.hamiltonian.eps1();
}

double measurement_work(double p1, const ThermalMeter &meter) {
    require_probability(p1, "measurement_work");
    const MeterHamiltonian &h = meter.hamiltonian;
    return p1 * h.gap() + h.eps0() - mean_energy(meter);
}

double free_energy_change(double p1, const ThermalMeter &meter) {
    require_probability(p1, "free_energy_change");
    const MeterHamiltonian &h = meter.hamiltonian;
    if (meter.beta.is_zero_temperature()) return p1 * h.gap();
    const double b = meter.beta.beta();
    if (b == 0.0) return std::numeric_limits<double>::infinity();

    const double closed = p1 * h.gap() + log_one_plus_boltzmann(b, h.gap()) / b;

    // Definition route: F_k = -beta^-1 ln Z_k with Z_k = e^{-beta eps_k}.
    const double f0 = -(-b * h.eps0()) / b;
    const double f1 = -(-b * h.eps1()) / b;
    const double ln_z = -b * h.eps0() + log_one_plus_boltzmann(b, h.gap());
    const double f_init = -ln_z / b;
    const double by_definition = (1.0 - p1) * f0 + p1 * f1 - f_init;

    if (std::abs(closed - by_definition) > 1e-12 * std::max(1.0, std::abs(closed))) {
        fail(ErrorCode::numerical, "free energy routes disagree: " + std::to_string(closed) + " vs " +
                                       std::to_string(by_definition));
    }
    return closed;
}

double irreversible_entropy_via_work(double p1, const ThermalMeter &meter) {
    if (meter.beta.is_zero_temperature()) return 0.0;
    const double b = meter.beta.beta();
    if (b == 0.0) fail(ErrorCode::divergence, "beta (W - Delta F) is undefined at beta = 0");
    return b * (measurement_work(p1, meter) - free_energy_change(p1, meter));
}

double irreversible_entropy(const ThermalMeter &meter) {
    if (meter.beta.is_zero_temperature()) return 0.0;
    const double b = meter.beta.beta();
    const MeterHamiltonian &h = meter.hamiltonian;
    const double s_irr = b * h.eps0() - b * mean_energy(meter) - log_one_plus_boltzmann(b, h.gap());

    if (b > 0.0) {
        const double via_work = irreversible_entropy_via_work(0.5, meter);
        if (std::abs(s_irr - via_work) > 1e-12 * std::max(1.0, b)) {
            fail(ErrorCode::numerical, "irreversible entropy routes disagree: " + std::to_string(s_irr) +
                                           " vs " + std::to_string(via_work));
        }
    }
    return s_irr;
}

double residual_entropy(std::span<const ComplexMatrix> branches) {
    double acc = 0.0;
    for (const ComplexMatrix &branch : branches) {
        if (branch.trace().real() < 1e-15) continue;
        acc += operator_entropy_term(DensityOperator::branch(branch));
    }
    return acc;
}

namespace {

std::array<double, 2> outcome_probabilities(const SignalState &rho, const KrausSet &kraus) {
    return {outcome_probability(kraus.e[0], rho), outcome_probability(kraus.e[1], rho)};
}

} // namespace

GoInformation go_information(const SignalState &rho, const KrausSet &kraus) {
    const auto p = outcome_probabilities(rho, kraus);
    std::array<ComplexMatrix, 2> branches{ComplexMatrix(2), ComplexMatrix(2)};
    for (std::size_t k = 0; k < 2; ++k) {
        const ComplexMatrix root = psd_sqrt(kraus.e[k]);
        branches[k] = root * rho.matrix() * root;
    }
    const double residual = residual_entropy(branches);
    return {von_neumann_entropy(rho.rho()) + shannon_entropy(p) + residual, residual};
}

ConditionalOutputState conditional_output_state(const SignalState &rho, const KrausSet &kraus,
                                                const ThermalMeter &meter) {
    ConditionalOutputState out{{ComplexMatrix(2), ComplexMatrix(2)}, {0.0, 0.0}};
    for (std::size_t k = 0; k < 2; ++k) {
        ComplexMatrix mixed = meter.w_h * (kraus.m[k] * rho.matrix() * kraus.m[k].dagger());
        if (meter.w_v != 0.0) mixed += meter.w_v * (kraus.n[k] * rho.matrix() * kraus.n[k].dagger());
        out.probability[k] = mixed.trace().real();
        out.rho_tilde[k] = std::move(mixed);
    }
    return out;
}

TildeInformation tilde_information(const SignalState &rho, const KrausSet &kraus,
                                   const ThermalMeter &meter) {
    const auto p = outcome_probabilities(rho, kraus);
    ConditionalOutputState states = conditional_output_state(rho, kraus, meter);
    const double residual = residual_entropy(states.rho_tilde);
    const double value = von_neumann_entropy(rho.rho()) + shannon_entropy(p) + residual;
    return {value, residual, std::move(states)};
}

BoundGap bound_gap(double s_irr, double tilde_info, double go_info, double h_shannon) {
    return {s_irr - (tilde_info - h_shannon), s_irr - (go_info - h_shannon)};
}

double extractable_work(double h_shannon_nats, InverseTemperature beta) {
    if (beta.is_zero_temperature()) return 0.0;
    if (beta.beta() == 0.0) fail(ErrorCode::divergence, "extractable work diverges at beta = 0");
    const double h_bits = h_shannon_nats / std::numbers::ln2;
    return (1.0 - h_bits) / beta.beta();
}

ThermoReport evaluate(MeasurementStrength theta, InverseTemperature beta, const SignalState &rho,
                      const MeterHamiltonian &hamiltonian) {
    const KrausSet kraus = build_kraus(theta);
    const ThermalMeter meter = gibbs(beta, hamiltonian);

    ThermoReport report{.theta = theta.radians(), .beta = beta};
    report.p = outcome_probabilities(rho, kraus);
    report.h_shannon = shannon_entropy(report.p);
    report.s_signal = von_neumann_entropy(rho.rho());

    const GoInformation go = go_information(rho, kraus);
    report.go_info = go.value;
    report.go_residual = go.residual;

    const TildeInformation tilde = tilde_information(rho, kraus, meter);
    report.tilde_info = tilde.value;
    report.residual_term = tilde.residual;

    report.w_meas = measurement_work(report.p[1], meter);
    report.delta_f = free_energy_change(report.p[1], meter);
    report.s_irr = irreversible_entropy(meter);

    const BoundGap gap = bound_gap(report.s_irr, report.tilde_info, report.go_info, report.h_shannon);
    report.bound_gap = gap.revised;
    report.bound_gap_original = gap.original;
    report.w_extract = beta.is_infinite_temperature() ? std::numeric_limits<double>::quiet_NaN()
                                                      : extractable_work(report.h_shannon, beta);
    return report;
}

} // namespace qthermo

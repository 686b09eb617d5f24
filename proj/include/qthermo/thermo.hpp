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
#include <limits>

#include "qthermo/linalg.hpp"
#include "qthermo/measurement.hpp"

namespace qthermo {

/// Inverse temperature (k_B = 1). Zero temperature is an explicit state
/// rather than a large finite beta.
class InverseTemperature {
  public:
    static InverseTemperature zero_temperature() noexcept { return InverseTemperature(0.0, true); }
    /// beta >= 0; beta = 0 is the infinite-temperature point.
    static InverseTemperature from_beta(double beta);
    /// T = beta^-1 >= 0; T = 0 maps to zero_temperature().
    static InverseTemperature from_temperature(double temperature);

    [[nodiscard]] bool is_zero_temperature() const noexcept { return infinite_; }
    [[nodiscard]] bool is_infinite_temperature() const noexcept { return !infinite_ && beta_ == 0.0; }
    /// +inf at zero temperature.
    [[nodiscard]] double beta() const noexcept {
        return infinite_ ? std::numeric_limits<double>::infinity() : beta_;
    }
    /// beta^-1; 0 at zero temperature, +inf at beta = 0.
    [[nodiscard]] double temperature() const noexcept;

  private:
    InverseTemperature(double beta, bool infinite) : beta_(beta), infinite_(infinite) {}

    double beta_;
    bool infinite_;
};

/// H_mu = eps0 |H><H| + eps1 |V><V| with eps1 > eps0.
class MeterHamiltonian {
  public:
    MeterHamiltonian() = default;
    MeterHamiltonian(double eps0, double eps1);

    [[nodiscard]] double eps0() const noexcept { return eps0_; }
    [[nodiscard]] double eps1() const noexcept { return eps1_; }
    [[nodiscard]] double gap() const noexcept { return eps1_ - eps0_; }

  private:
    double eps0_ = 0.0;
    double eps1_ = 1.0;
};

/// Gibbs state of the meter.
struct ThermalMeter {
    InverseTemperature beta;
    MeterHamiltonian hamiltonian;
    /// Partition function e^{-beta eps0} + e^{-beta eps1}. At zero temperature
    /// it is 1 for eps0 = 0 and follows the limit otherwise.
    double z;
    double w_h;
    double w_v;
};

ThermalMeter gibbs(InverseTemperature beta, const MeterHamiltonian &hamiltonian = {});

double mean_energy(const ThermalMeter &meter);

/// W_meas = p1 gap + eps0 - <eps>
double measurement_work(double p1, const ThermalMeter &meter);

/// Delta F = p1 gap + beta^-1 ln(1 + e^{-beta gap}). Internally cross-checked
/// against sum_k p_k F_k - F_init with F = -beta^-1 ln Z. Returns +inf at beta = 0.
double free_energy_change(double p1, const ThermalMeter &meter);

/// S_irr = beta eps0 - beta <eps> - ln(1 + e^{-beta gap}); independent of theta.
double irreversible_entropy(const ThermalMeter &meter);

/// beta (W_meas - Delta F) for a given p1. Not defined at beta = 0.
double irreversible_entropy_via_work(double p1, const ThermalMeter &meter);

struct GoInformation {
    double value;
    /// sum_k Tr[(sqrt E_k rho sqrt E_k) ln(...)]
    double residual;
};

/// I = S(rho) + H({p_k}) + residual, with sqrt(E_k) taken literally.
GoInformation go_information(const SignalState &rho, const KrausSet &kraus);

/// rho~_k = w_h M_k rho M_k^dag + w_v N_k rho N_k^dag, trace p_k.
struct ConditionalOutputState {
    std::array<ComplexMatrix, 2> rho_tilde;
    std::array<double, 2> probability;
};

ConditionalOutputState conditional_output_state(const SignalState &rho, const KrausSet &kraus,
                                                const ThermalMeter &meter);

struct TildeInformation {
    double value;
    double residual;
    ConditionalOutputState states;
};

TildeInformation tilde_information(const SignalState &rho, const KrausSet &kraus,
                                   const ThermalMeter &meter);

/// Sum of Tr[A ln A] over branches, skipping branches without support.
double residual_entropy(std::span<const ComplexMatrix> branches);

struct BoundGap {
    /// S_irr - (I~ - H)
    double revised;
    /// S_irr - (I - H)
    double original;
};

BoundGap bound_gap(double s_irr, double tilde_info, double go_info, double h_shannon);

/// beta^-1 (1 - H_bits), H_bits = h_nats / ln 2. 0 at zero temperature;
/// ErrorCode::divergence at beta = 0.
double extractable_work(double h_shannon_nats, InverseTemperature beta);

struct ThermoReport {
    double theta = 0.0;
    InverseTemperature beta;
    std::array<double, 2> p{};
    double h_shannon = 0.0;
    double s_signal = 0.0;
    double go_info = 0.0;
    double go_residual = 0.0;
    double tilde_info = 0.0;
    double residual_term = 0.0;
    double w_meas = 0.0;
    double delta_f = 0.0;
    double s_irr = 0.0;
    double bound_gap = 0.0;
    double bound_gap_original = 0.0;
    double w_extract = 0.0;
};

/// Every scalar for one (theta, beta) point. `w_extract` is NaN at beta = 0.
ThermoReport evaluate(MeasurementStrength theta, InverseTemperature beta, const SignalState &rho,
                      const MeterHamiltonian &hamiltonian = {});

} // namespace qthermo

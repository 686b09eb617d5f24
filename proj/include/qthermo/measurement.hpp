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
#include <numbers>
#include <string_view>

#include "qthermo/linalg.hpp"

namespace qthermo {

/// HWP rotation angle theta in [0, pi/8]. 0 is the no-coupling limit and
/// pi/8 the projective limit.
class MeasurementStrength {
  public:
    static constexpr double kMax = std::numbers::pi / 8.0;

    /// Throws ErrorCode::invalid_input outside [0, pi/8]. Values within
    /// 1e-12 of either end are snapped onto it.
    explicit MeasurementStrength(double theta);

    [[nodiscard]] double radians() const noexcept { return theta_; }

  private:
    double theta_;
};

/// The two-outcome measurement for meter preparations |H> (M) and |V> (N),
/// together with the shared effects E_k = M_k^dag M_k = N_k^dag N_k.
struct KrausSet {
    std::array<ComplexMatrix, 2> m;
    std::array<ComplexMatrix, 2> n;
    std::array<ComplexMatrix, 2> e;
};

/// Closed forms, with a = 2 theta + pi/4 and b = 2 theta - pi/4:
///   M_0 = cos a |H><H| + sin a |V><V|
///   M_1 = -cos b |H><H| + sin b |V><V|
///   N_k = (-i sigma_y) M_k
KrausSet build_kraus(MeasurementStrength theta);

/// -i sigma_y: |H> -> |V>, |V> -> -|H>.
ComplexMatrix spin_flip();

/// diag(1, 1, 1, -1) over {HH, HV, VH, VV}, signal first.
ComplexMatrix csign_unitary();

/// [[cos 2t, sin 2t], [sin 2t, -cos 2t]]
ComplexMatrix hwp_unitary(MeasurementStrength theta);

enum class MeterPrep { horizontal, vertical };

std::string_view to_string(MeterPrep prep) noexcept;

/// Full signal-meter unitary for one meter preparation. The meter is rotated
/// by the HWP and then coupled through the C-Sign taken in the frame
/// (X (x) 1) CZ (X (x) 1), i.e. the pi phase sits on |H>_s|V>_m. For the
/// |V> preparation the meter is first flipped to |H> and the signal receives
/// -i sigma_y after the coupling; no single CZ-type coupling yields both
/// operator families at once.
ComplexMatrix coupling_unitary(MeasurementStrength theta, MeterPrep prep);

/// Meter readout basis: outcome 0 is |D>, outcome 1 is |A>.
ComplexVector readout_ket(int outcome);

/// Branch operators K_k = (1 (x) <e_k|) U (1 (x) |m>) obtained by pushing the
/// joint product inputs through coupling_unitary. They reproduce build_kraus
/// up to a global phase per branch.
std::array<ComplexMatrix, 2> kraus_from_circuit(MeasurementStrength theta, MeterPrep prep);

/// Signal density operator in the {H, V} basis.
class SignalState {
  public:
    explicit SignalState(DensityOperator rho);

    /// Pure or mixed qubit state from a Bloch vector with |r| <= 1.
    static SignalState from_bloch(double x, double y, double z);
    static SignalState pure(std::span<const Complex> ket);
    /// One of H, V, D, A, R, L, or "mixed" (I/2).
    static SignalState named(std::string_view name);

    [[nodiscard]] const DensityOperator &rho() const noexcept { return rho_; }
    [[nodiscard]] const ComplexMatrix &matrix() const noexcept { return rho_.matrix(); }

  private:
    DensityOperator rho_;
};

/// Tr[E rho], clamped to [0, 1].
double outcome_probability(const ComplexMatrix &effect, const SignalState &rho);

/// K rho K^dag and its trace.
class BranchState {
  public:
    BranchState(ComplexMatrix unnormalized, double probability)
        : unnormalized_(std::move(unnormalized)), probability_(probability) {}

    [[nodiscard]] const ComplexMatrix &unnormalized() const noexcept { return unnormalized_; }
    [[nodiscard]] double probability() const noexcept { return probability_; }

    /// Throws ErrorCode::no_support when the branch has trace below 1e-15.
    [[nodiscard]] DensityOperator subnormalized() const;
    [[nodiscard]] DensityOperator normalized() const;

  private:
    ComplexMatrix unnormalized_;
    double probability_;
};

BranchState post_measurement_state(const ComplexMatrix &kraus, const SignalState &rho);

} // namespace qthermo

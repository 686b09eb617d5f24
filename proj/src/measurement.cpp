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

#include "qthermo/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qthermo/error.hpp"

namespace qthermo {

MeasurementStrength::MeasurementStrength(double theta) {
    constexpr double kSnap = 1e-12;
    if (!std::isfinite(theta) || theta < -kSnap || theta > kMax + kSnap) {
        fail(ErrorCode::invalid_input,
             "measurement strength theta must lie in [0, pi/8], got " + std::to_string(theta));
    }
    theta_ = std::clamp(theta, 0.0, kMax);
}

ComplexMatrix spin_flip() { return {{0.0, -1.0}, {1.0, 0.0}}; }

KrausSet build_kraus(MeasurementStrength theta) {
    const double a = 2.0 * theta.radians() + std::numbers::pi / 4.0;
    const double b = 2.0 * theta.radians() - std::numbers::pi / 4.0;

    const ComplexMatrix m0 = ComplexMatrix::diagonal({std::cos(a), std::sin(a)});
    const ComplexMatrix m1 = ComplexMatrix::diagonal({-std::cos(b), std::sin(b)});
    const ComplexMatrix flip = spin_flip();

    KrausSet set{{m0, m1}, {flip * m0, flip * m1}, {m0.dagger() * m0, m1.dagger() * m1}};
    return set;
}

ComplexMatrix csign_unitary() { return ComplexMatrix::diagonal({1.0, 1.0, 1.0, -1.0}); }

ComplexMatrix hwp_unitary(MeasurementStrength theta) {
    const double c = std::cos(2.0 * theta.radians());
    const double s = std::sin(2.0 * theta.radians());
    return {{c, s}, {s, -c}};
}

std::string_view to_string(MeterPrep prep) noexcept {
    return prep == MeterPrep::horizontal ? "H" : "V";
}

ComplexMatrix coupling_unitary(MeasurementStrength theta, MeterPrep prep) {
    const ComplexMatrix id = ComplexMatrix::identity(2);
    const ComplexMatrix signal_x = tensor(pauli::x(), id);
    const ComplexMatrix coupling = signal_x * csign_unitary() * signal_x;
    const ComplexMatrix horizontal = coupling * tensor(id, hwp_unitary(theta));
    if (prep == MeterPrep::horizontal) return horizontal;
    return tensor(spin_flip(), id) * horizontal * tensor(id, pauli::x());
}

ComplexVector readout_ket(int outcome) {
    if (outcome != 0 && outcome != 1) fail(ErrorCode::invalid_input, "outcome must be 0 or 1");
    return outcome == 0 ? kets::d() : kets::a();
}

std::array<ComplexMatrix, 2> kraus_from_circuit(MeasurementStrength theta, MeterPrep prep) {
    const ComplexMatrix u = coupling_unitary(theta, prep);
    const ComplexVector meter = prep == MeterPrep::horizontal ? kets::h() : kets::v();
    const std::array<ComplexVector, 2> signal_basis{kets::h(), kets::v()};

    std::array<ComplexMatrix, 2> branches{ComplexMatrix(2), ComplexMatrix(2)};
    for (std::size_t s = 0; s < 2; ++s) {
        const ComplexVector joint_in = tensor(signal_basis[s], meter);
        const ComplexVector joint_out = u * std::span<const Complex>(joint_in);
        for (int k = 0; k < 2; ++k) {
            const ComplexVector readout = readout_ket(k);
            for (std::size_t s_out = 0; s_out < 2; ++s_out) {
                Complex amp{0.0, 0.0};
                for (std::size_t j = 0; j < 2; ++j) amp += std::conj(readout[j]) * joint_out[s_out * 2 + j];
                branches[k](s_out, s) = amp;
            }
        }
    }
    return branches;
}

SignalState::SignalState(DensityOperator rho) : rho_(std::move(rho)) {
    if (rho_.dim() != 2 || !rho_.trace_normalized()) {
        fail(ErrorCode::invalid_input, "signal must be a unit-trace qubit state");
    }
}

SignalState SignalState::from_bloch(double x, double y, double z) {
    const double radius = std::sqrt(x * x + y * y + z * z);
    if (!std::isfinite(radius) || radius > 1.0 + 1e-12) {
        fail(ErrorCode::invalid_input, "Bloch vector must have length <= 1");
    }
    ComplexMatrix m = ComplexMatrix::identity(2);
    m += x * pauli::x();
    m += y * pauli::y();
    m += z * pauli::z();
    m *= 0.5;
    return SignalState(DensityOperator::state(m));
}

SignalState SignalState::pure(std::span<const Complex> ket) {
    if (ket.size() != 2) fail(ErrorCode::invalid_input, "signal ket must have two amplitudes");
    return SignalState(DensityOperator::state(ComplexMatrix::projector(ket)));
}

SignalState SignalState::named(std::string_view name) {
    if (name == "H") return pure(kets::h());
    if (name == "V") return pure(kets::v());
    if (name == "D") return pure(kets::d());
    if (name == "A") return pure(kets::a());
    if (name == "R") return pure(kets::r());
    if (name == "L") return pure(kets::l());
    if (name == "mixed") return SignalState(DensityOperator::state(0.5 * ComplexMatrix::identity(2)));
    fail(ErrorCode::invalid_input, "unknown signal preparation '" + std::string(name) + "'");
}

double outcome_probability(const ComplexMatrix &effect, const SignalState &rho) {
    return std::clamp((effect * rho.matrix()).trace().real(), 0.0, 1.0);
}

DensityOperator BranchState::subnormalized() const {
    if (probability_ < 1e-15) fail(ErrorCode::no_support, "branch has no support");
    return DensityOperator::branch(unnormalized_);
}

DensityOperator BranchState::normalized() const {
    if (probability_ < 1e-15) fail(ErrorCode::no_support, "branch has no support");
    return DensityOperator::state(unnormalized_ * (1.0 / probability_));
}

BranchState post_measurement_state(const ComplexMatrix &kraus, const SignalState &rho) {
    if (kraus.dim() != 2) fail(ErrorCode::invalid_input, "Kraus operator must be 2x2");
    ComplexMatrix out = kraus * rho.matrix() * kraus.dagger();
    const double p = out.trace().real();
    return BranchState(std::move(out), p);
}

} // namespace qthermo

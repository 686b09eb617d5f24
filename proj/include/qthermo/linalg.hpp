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
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qthermo {

using Complex = std::complex<double>;

/// Column vector of amplitudes (length 2 or 4).
using ComplexVector = std::vector<Complex>;

/// Dense square complex matrix restricted to dimension 2 (one qubit) or
/// 4 (two qubits). Storage is row-major.
class ComplexMatrix {
  public:
    explicit ComplexMatrix(std::size_t dim);
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix diagonal(std::span<const double> entries);
    static ComplexMatrix diagonal(std::initializer_list<double> entries);
    /// |psi><psi|
    static ComplexMatrix projector(std::span<const Complex> ket);

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }

    Complex &operator()(std::size_t row, std::size_t col) noexcept {
        return data_[row * dim_ + col];
    }
    const Complex &operator()(std::size_t row, std::size_t col) const noexcept {
        return data_[row * dim_ + col];
    }

    [[nodiscard]] ComplexMatrix dagger() const;
    [[nodiscard]] Complex trace() const noexcept;

    ComplexMatrix &operator+=(const ComplexMatrix &other);
    ComplexMatrix &operator-=(const ComplexMatrix &other);
    ComplexMatrix &operator*=(Complex scale) noexcept;

    friend bool operator==(const ComplexMatrix &, const ComplexMatrix &) = default;

  private:
    std::size_t dim_;
    std::array<Complex, 16> data_{};
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix &rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix &rhs);
ComplexMatrix operator*(ComplexMatrix lhs, Complex scale);
ComplexMatrix operator*(Complex scale, ComplexMatrix rhs);
ComplexMatrix operator*(const ComplexMatrix &lhs, const ComplexMatrix &rhs);
ComplexVector operator*(const ComplexMatrix &lhs, std::span<const Complex> ket);

ComplexMatrix matmul(const ComplexMatrix &lhs, const ComplexMatrix &rhs);
ComplexMatrix dagger(const ComplexMatrix &m);
/// Kronecker product; the left factor is the slow (first) index.
ComplexMatrix tensor(const ComplexMatrix &lhs, const ComplexMatrix &rhs);
ComplexVector tensor(std::span<const Complex> lhs, std::span<const Complex> rhs);

/// max_ij |a_ij - b_ij|
double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b);
/// max_ij |a_ij - conj(a_ji)|
double hermiticity_error(const ComplexMatrix &a);
/// <bra|m|ket>
Complex expectation(std::span<const Complex> ket, const ComplexMatrix &m);
Complex inner(std::span<const Complex> bra, std::span<const Complex> ket);

/// Eigenvalues of a Hermitian matrix in descending order.
class Spectrum {
  public:
    explicit Spectrum(std::vector<double> descending);

    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const noexcept { return values_[i]; }
    [[nodiscard]] double sum() const noexcept;
    [[nodiscard]] double min() const noexcept { return values_.back(); }

  private:
    std::vector<double> values_;
};

struct EigenSystem {
    Spectrum values;
    /// vectors[i] is the unit eigenvector for values[i].
    std::vector<ComplexVector> vectors;
};

inline constexpr double kHermitianTolerance = 1e-10;
inline constexpr double kPsdTolerance = 1e-10;

/// Closed form for dim 2, cyclic complex Jacobi for dim 4.
/// Throws ErrorCode::invalid_input if `a` is not Hermitian within 1e-10.
EigenSystem hermitian_eigensystem(const ComplexMatrix &a);
Spectrum hermitian_eigenvalues(const ComplexMatrix &a);

/// Rebuild sum_i lambda_i v_i v_i^dagger.
ComplexMatrix reconstruct(const EigenSystem &eig);

/// Unique PSD square root.
ComplexMatrix psd_sqrt(const ComplexMatrix &e);

/// Hermitian, PSD, trace-constrained operator. `trace_normalized` states have
/// unit trace; branch (subnormalized) operators satisfy 0 < Tr <= 1.
class DensityOperator {
  public:
    static DensityOperator state(const ComplexMatrix &m);
    static DensityOperator branch(const ComplexMatrix &m);

    [[nodiscard]] const ComplexMatrix &matrix() const noexcept { return matrix_; }
    [[nodiscard]] std::size_t dim() const noexcept { return matrix_.dim(); }
    [[nodiscard]] bool trace_normalized() const noexcept { return normalized_; }
    [[nodiscard]] double trace() const noexcept { return matrix_.trace().real(); }
    [[nodiscard]] const Spectrum &spectrum() const noexcept { return spectrum_; }

  private:
    DensityOperator(ComplexMatrix m, Spectrum s, bool normalized)
        : matrix_(std::move(m)), spectrum_(std::move(s)), normalized_(normalized) {}

    ComplexMatrix matrix_;
    Spectrum spectrum_;
    bool normalized_;
};

/// p ln p with 0 ln 0 = 0; values in [-1e-12, 0] clamp to 0.
double xlnx(double p);
/// -sum p ln p in nats. Requires p >= 0 and |sum - 1| <= 1e-9.
double shannon_entropy(std::span<const double> probs);
double shannon_entropy(std::initializer_list<double> probs);
/// S(rho) = -Tr rho ln rho, nats.
double von_neumann_entropy(const DensityOperator &rho);
/// +Tr A ln A for a PSD operator with 0 < Tr A <= 1.
double operator_entropy_term(const DensityOperator &a);

/// <psi|rho|psi> for normalized psi.
double fidelity_pure(std::span<const Complex> psi, const DensityOperator &rho);

namespace kets {
ComplexVector h();
ComplexVector v();
ComplexVector d();
ComplexVector a();
ComplexVector r();
ComplexVector l();
} // namespace kets

namespace pauli {
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
} // namespace pauli

} // namespace qthermo

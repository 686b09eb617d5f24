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

#include "qthermo/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qthermo/error.hpp"

namespace qthermo {

namespace {

void require_dim(std::size_t dim) {
    if (dim != 2 && dim != 4) {
        fail(ErrorCode::invalid_input,
             "matrix dimension must be 2 or 4, got " + std::to_string(dim));
    }
}

void require_same_dim(const ComplexMatrix &a, const ComplexMatrix &b, const char *what) {
    if (a.dim() != b.dim()) {
        fail(ErrorCode::invalid_input, std::string(what) + ": dimension mismatch (" +
                                           std::to_string(a.dim()) + " vs " +
                                           std::to_string(b.dim()) + ")");
    }
}

double max_abs_entry(const ComplexMatrix &a) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) m = std::max(m, std::abs(a(i, j)));
    return m;
}

ComplexVector unit(std::size_t dim, std::size_t index) {
    ComplexVector v(dim, Complex{0.0, 0.0});
    v[index] = 1.0;
    return v;
}

EigenSystem eigensystem_2x2(const ComplexMatrix &m) {
    const double a = m(0, 0).real();
    const double d = m(1, 1).real();
    const Complex b = m(0, 1);
    const double half_trace = 0.5 * (a + d);
    const double half_gap = 0.5 * (a - d);
    const double radius = std::hypot(half_gap, std::abs(b));

    if (std::abs(b) == 0.0) {
        if (a >= d) return {Spectrum({a, d}), {unit(2, 0), unit(2, 1)}};
        return {Spectrum({d, a}), {unit(2, 1), unit(2, 0)}};
    }

    const double upper = half_trace + radius;
    const double lower = half_trace - radius;
    // Two null-space candidates of (A - upper I); the larger one is well conditioned.
    ComplexVector first{b, Complex{upper - a, 0.0}};
    ComplexVector second{Complex{upper - d, 0.0}, std::conj(b)};
    const double n1 = std::hypot(std::abs(first[0]), std::abs(first[1]));
    const double n2 = std::hypot(std::abs(second[0]), std::abs(second[1]));
    ComplexVector top = n1 >= n2 ? first : second;
    const double norm = std::max(n1, n2);
    top[0] /= norm;
    top[1] /= norm;
    ComplexVector bottom{-std::conj(top[1]), std::conj(top[0])};
    return {Spectrum({upper, lower}), {top, bottom}};
}

// Cyclic Jacobi for Hermitian matrices: each (p, q) step first rotates the
// phase of column q so a_pq is real, then applies a real Givens rotation.
EigenSystem eigensystem_jacobi(const ComplexMatrix &input) {
    const std::size_t n = input.dim();
    ComplexMatrix a = input;
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double scale = std::max(max_abs_entry(input), 1e-300);
    constexpr int kMaxSweeps = 64;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
        if (std::sqrt(off) <= 1e-17 * scale) break;

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double magnitude = std::abs(a(p, q));
                if (magnitude <= 1e-300) continue;

                const Complex phase = std::conj(a(p, q)) / magnitude; // e^{-i phi}
                for (std::size_t r = 0; r < n; ++r) {
                    a(r, q) *= phase;
                    v(r, q) *= phase;
                }
                for (std::size_t r = 0; r < n; ++r) a(q, r) *= std::conj(phase);
                a(p, q) = magnitude;
                a(q, p) = magnitude;

                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double tau = (aqq - app) / (2.0 * magnitude);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                for (std::size_t r = 0; r < n; ++r) {
                    const Complex arp = a(r, p);
                    const Complex arq = a(r, q);
                    a(r, p) = c * arp - s * arq;
                    a(r, q) = s * arp + c * arq;
                    const Complex vrp = v(r, p);
                    const Complex vrq = v(r, q);
                    v(r, p) = c * vrp - s * vrq;
                    v(r, q) = s * vrp + c * vrq;
                }
                for (std::size_t r = 0; r < n; ++r) {
                    const Complex apr = a(p, r);
                    const Complex aqr = a(q, r);
                    a(p, r) = c * apr - s * aqr;
                    a(q, r) = s * apr + c * aqr;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() > a(j, j).real();
    });

    std::vector<double> values;
    std::vector<ComplexVector> vectors;
    for (std::size_t idx : order) {
        values.push_back(a(idx, idx).real());
        ComplexVector col(n);
        for (std::size_t r = 0; r < n; ++r) col[r] = v(r, idx);
        vectors.push_back(std::move(col));
    }
    EigenSystem result{Spectrum(std::move(values)), std::move(vectors)};

    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const ComplexVector av = input * std::span<const Complex>(result.vectors[i]);
        for (std::size_t r = 0; r < n; ++r)
            residual = std::max(residual, std::abs(av[r] - result.values[i] * result.vectors[i][r]));
    }
    if (residual > 1e-12 * std::max(1.0, scale)) {
        fail(ErrorCode::numerical,
             "Jacobi eigensolver residual " + std::to_string(residual) + " above 1e-12");
    }
    return result;
}

} // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim) { require_dim(dim); }

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : dim_(rows.size()) {
    require_dim(dim_);
    std::size_t r = 0;
    for (const auto &row : rows) {
        if (row.size() != dim_) fail(ErrorCode::invalid_input, "matrix rows must be square");
        std::size_t c = 0;
        for (const Complex &value : row) (*this)(r, c++) = value;
        ++r;
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> entries) {
    ComplexMatrix m(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) m(i, i) = entries[i];
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<double> entries) {
    return diagonal(std::span<const double>(entries.begin(), entries.size()));
}

ComplexMatrix ComplexMatrix::projector(std::span<const Complex> ket) {
    ComplexMatrix m(ket.size());
    for (std::size_t i = 0; i < ket.size(); ++i)
        for (std::size_t j = 0; j < ket.size(); ++j) m(i, j) = ket[i] * std::conj(ket[j]);
    return m;
}

ComplexMatrix ComplexMatrix::dagger() const {
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i)
        for (std::size_t j = 0; j < dim_; ++j) out(i, j) = std::conj((*this)(j, i));
    return out;
}

Complex ComplexMatrix::trace() const noexcept {
    Complex t{0.0, 0.0};
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &other) {
    require_same_dim(*this, other, "add");
    for (std::size_t i = 0; i < dim_ * dim_; ++i) data_[i] += other.data_[i];
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &other) {
    require_same_dim(*this, other, "subtract");
    for (std::size_t i = 0; i < dim_ * dim_; ++i) data_[i] -= other.data_[i];
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(Complex scale) noexcept {
    for (std::size_t i = 0; i < dim_ * dim_; ++i) data_[i] *= scale;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix &rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix &rhs) { return lhs -= rhs; }
ComplexMatrix operator*(ComplexMatrix lhs, Complex scale) { return lhs *= scale; }
ComplexMatrix operator*(Complex scale, ComplexMatrix rhs) { return rhs *= scale; }

ComplexMatrix operator*(const ComplexMatrix &lhs, const ComplexMatrix &rhs) {
    require_same_dim(lhs, rhs, "matmul");
    const std::size_t n = lhs.dim();
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const Complex lik = lhs(i, k);
            if (lik == Complex{0.0, 0.0}) continue;
            for (std::size_t j = 0; j < n; ++j) out(i, j) += lik * rhs(k, j);
        }
    return out;
}

ComplexVector operator*(const ComplexMatrix &lhs, std::span<const Complex> ket) {
    if (ket.size() != lhs.dim()) fail(ErrorCode::invalid_input, "matrix-vector dimension mismatch");
    ComplexVector out(lhs.dim(), Complex{0.0, 0.0});
    for (std::size_t i = 0; i < lhs.dim(); ++i)
        for (std::size_t j = 0; j < lhs.dim(); ++j) out[i] += lhs(i, j) * ket[j];
    return out;
}

ComplexMatrix matmul(const ComplexMatrix &lhs, const ComplexMatrix &rhs) { return lhs * rhs; }
ComplexMatrix dagger(const ComplexMatrix &m) { return m.dagger(); }

ComplexMatrix tensor(const ComplexMatrix &lhs, const ComplexMatrix &rhs) {
    const std::size_t n = lhs.dim() * rhs.dim();
    if (n != 4) fail(ErrorCode::invalid_input, "tensor product must produce a 4x4 matrix");
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < lhs.dim(); ++i)
        for (std::size_t j = 0; j < lhs.dim(); ++j)
            for (std::size_t k = 0; k < rhs.dim(); ++k)
                for (std::size_t l = 0; l < rhs.dim(); ++l)
                    out(i * rhs.dim() + k, j * rhs.dim() + l) = lhs(i, j) * rhs(k, l);
    return out;
}

ComplexVector tensor(std::span<const Complex> lhs, std::span<const Complex> rhs) {
    ComplexVector out;
    out.reserve(lhs.size() * rhs.size());
    for (const Complex &x : lhs)
        for (const Complex &y : rhs) out.push_back(x * y);
    return out;
}

double max_abs_diff(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_dim(a, b, "max_abs_diff");
    return max_abs_entry(a - b);
}

double hermiticity_error(const ComplexMatrix &a) {
    double err = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = i; j < a.dim(); ++j)
            err = std::max(err, std::abs(a(i, j) - std::conj(a(j, i))));
    return err;
}

Complex inner(std::span<const Complex> bra, std::span<const Complex> ket) {
    if (bra.size() != ket.size()) fail(ErrorCode::invalid_input, "inner product dimension mismatch");
    Complex acc{0.0, 0.0};
    for (std::size_t i = 0; i < bra.size(); ++i) acc += std::conj(bra[i]) * ket[i];
    return acc;
}

Complex expectation(std::span<const Complex> ket, const ComplexMatrix &m) {
    const ComplexVector mk = m * ket;
    return inner(ket, mk);
}

Spectrum::Spectrum(std::vector<double> descending) : values_(std::move(descending)) {
    if (!std::is_sorted(values_.begin(), values_.end(), std::greater<>())) {
        std::sort(values_.begin(), values_.end(), std::greater<>());
    }
}

double Spectrum::sum() const noexcept {
    return std::accumulate(values_.begin(), values_.end(), 0.0);
}

EigenSystem hermitian_eigensystem(const ComplexMatrix &a) {
    const double herm = hermiticity_error(a);
    if (herm > kHermitianTolerance) {
        fail(ErrorCode::invalid_input,
             "matrix is not Hermitian (deviation " + std::to_string(herm) + ")");
    }
    const ComplexMatrix symmetric = 0.5 * (a + a.dagger());
    if (a.dim() == 2) return eigensystem_2x2(symmetric);
    return eigensystem_jacobi(symmetric);
}

Spectrum hermitian_eigenvalues(const ComplexMatrix &a) { return hermitian_eigensystem(a).values; }

ComplexMatrix reconstruct(const EigenSystem &eig) {
    const std::size_t n = eig.vectors.size();
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) out += eig.values[i] * ComplexMatrix::projector(eig.vectors[i]);
    return out;
}

ComplexMatrix psd_sqrt(const ComplexMatrix &e) {
    const EigenSystem eig = hermitian_eigensystem(e);
    if (eig.values.min() < -kPsdTolerance) {
        fail(ErrorCode::invalid_input, "psd_sqrt: negative eigenvalue " +
                                           std::to_string(eig.values.min()));
    }
    ComplexMatrix out(e.dim());
    for (std::size_t i = 0; i < eig.vectors.size(); ++i) {
        const double lambda = std::max(eig.values[i], 0.0);
        if (lambda == 0.0) continue;
        out += std::sqrt(lambda) * ComplexMatrix::projector(eig.vectors[i]);
    }
    return out;
}

namespace {

Spectrum validated_spectrum(const ComplexMatrix &m) {
    const double herm = hermiticity_error(m);
    if (herm > 1e-12) {
        fail(ErrorCode::invalid_input,
             "density operator is not Hermitian (deviation " + std::to_string(herm) + ")");
    }
    if (std::abs(m.trace().imag()) > 1e-12) {
        fail(ErrorCode::invalid_input, "density operator has a complex trace");
    }
    Spectrum spectrum = hermitian_eigenvalues(m);
    if (spectrum.min() < -kPsdTolerance) {
        fail(ErrorCode::invalid_input, "density operator is not positive semidefinite (min eigenvalue " +
                                           std::to_string(spectrum.min()) + ")");
    }
    return spectrum;
}

} // namespace

DensityOperator DensityOperator::state(const ComplexMatrix &m) {
    Spectrum spectrum = validated_spectrum(m);
    const double tr = m.trace().real();
    if (std::abs(tr - 1.0) > 1e-12) {
        fail(ErrorCode::invalid_input, "state must have unit trace, got " + std::to_string(tr));
    }
    return DensityOperator(m, std::move(spectrum), true);
}

DensityOperator DensityOperator::branch(const ComplexMatrix &m) {
    Spectrum spectrum = validated_spectrum(m);
    const double tr = m.trace().real();
    if (!(tr > 0.0) || tr > 1.0 + 1e-12) {
        fail(ErrorCode::invalid_input,
             "branch operator trace must lie in (0, 1], got " + std::to_string(tr));
    }
    return DensityOperator(m, std::move(spectrum), false);
}

double xlnx(double p) {
    if (p < -1e-12) fail(ErrorCode::domain, "xlnx: negative probability " + std::to_string(p));
    if (p <= 0.0) return 0.0;
    return p * std::log(p);
}

double shannon_entropy(std::span<const double> probs) {
    double total = 0.0;
    for (double p : probs) {
        if (p < 0.0 || !std::isfinite(p)) {
            fail(ErrorCode::invalid_distribution, "probabilities must be finite and nonnegative");
        }
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) {
        fail(ErrorCode::invalid_distribution,
             "probabilities must sum to 1, got " + std::to_string(total));
    }
    double h = 0.0;
    for (double p : probs) h -= xlnx(p);
    return h;
}

double shannon_entropy(std::initializer_list<double> probs) {
    return shannon_entropy(std::span<const double>(probs.begin(), probs.size()));
}

namespace {

double spectral_xlnx_sum(const Spectrum &spectrum) {
    double acc = 0.0;
    for (double lambda : spectrum.values()) acc += xlnx(std::max(lambda, 0.0));
    return acc;
}

} // namespace

double von_neumann_entropy(const DensityOperator &rho) {
    if (!rho.trace_normalized()) {
        fail(ErrorCode::invalid_input, "von Neumann entropy requires a unit-trace state");
    }
    return -spectral_xlnx_sum(rho.spectrum());
}

double operator_entropy_term(const DensityOperator &a) { return spectral_xlnx_sum(a.spectrum()); }

double fidelity_pure(std::span<const Complex> psi, const DensityOperator &rho) {
    if (psi.size() != rho.dim()) fail(ErrorCode::invalid_input, "fidelity: dimension mismatch");
    const double norm = inner(psi, psi).real();
    if (std::abs(norm - 1.0) > 1e-12) fail(ErrorCode::invalid_input, "fidelity: ket is not normalized");
    return std::clamp(expectation(psi, rho.matrix()).real(), 0.0, 1.0);
}

namespace kets {
namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
} // namespace
ComplexVector h() { return {1.0, 0.0}; }
ComplexVector v() { return {0.0, 1.0}; }
ComplexVector d() { return {kInvSqrt2, kInvSqrt2}; }
ComplexVector a() { return {kInvSqrt2, -kInvSqrt2}; }
ComplexVector r() { return {kInvSqrt2, Complex{0.0, kInvSqrt2}}; }
ComplexVector l() { return {kInvSqrt2, Complex{0.0, -kInvSqrt2}}; }
} // namespace kets

namespace pauli {
ComplexMatrix x() { return {{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix y() { return {{0.0, Complex{0.0, -1.0}}, {Complex{0.0, 1.0}, 0.0}}; }
ComplexMatrix z() { return {{1.0, 0.0}, {0.0, -1.0}}; }
} // namespace pauli

} // namespace qthermo

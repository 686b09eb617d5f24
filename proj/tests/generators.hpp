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


// Hand-rolled random generators for property tests, plus conversions
// between qthermo matrices and the Eigen oracle.

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>

#include "oracle.hpp"
#include "qthermo/error.hpp"
#include "qthermo/linalg.hpp"

namespace gen {

using qthermo::Complex;
using qthermo::ComplexMatrix;
using qthermo::ComplexVector;

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}
    double uniform(double lo = 0.0, double hi = 1.0) {
        return std::uniform_real_distribution<double>(lo, hi)(engine_);
    }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(engine_); }
    std::uint64_t bits() { return engine_(); }
    Complex gaussian_complex() { return {normal(), normal()}; }

  private:
    std::mt19937_64 engine_;
};

inline ComplexMatrix hermitian(Rng &rng, std::size_t dim, double scale = 1.0) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        m(i, i) = scale * rng.normal();
        for (std::size_t j = i + 1; j < dim; ++j) {
            m(i, j) = scale * rng.gaussian_complex();
            m(j, i) = std::conj(m(i, j));
        }
    }
    return m;
}

inline ComplexVector unit_ket(Rng &rng, std::size_t dim) {
    ComplexVector v(dim);
    double norm = 0.0;
    for (auto &c : v) {
        c = rng.gaussian_complex();
        norm += std::norm(c);
    }
    for (auto &c : v) c /= std::sqrt(norm);
    return v;
}

/// Random density matrix G G^dagger / Tr; rank-deficient when `rank` < dim.
inline ComplexMatrix density(Rng &rng, std::size_t dim, std::size_t rank) {
    ComplexMatrix g(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < rank; ++j) g(i, j) = rng.gaussian_complex();
    ComplexMatrix rho = g * g.dagger();
    rho *= Complex(1.0 / rho.trace().real(), 0.0);
    return rho;
}

/// Uniform point in the Bloch ball.
inline std::array<double, 3> bloch_ball(Rng &rng) {
    for (;;) {
        const double x = rng.uniform(-1, 1), y = rng.uniform(-1, 1), z = rng.uniform(-1, 1);
        if (x * x + y * y + z * z <= 1.0) return {x, y, z};
    }
}

inline double theta(Rng &rng) { return rng.uniform(0.0, std::numbers::pi / 8.0); }

inline oracle::Mat to_eigen(const ComplexMatrix &m) {
    oracle::Mat out(m.dim(), m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j) out(i, j) = m(i, j);
    return out;
}

inline double max_abs_diff(const ComplexMatrix &a, const oracle::Mat &b) {
    return (to_eigen(a) - b).cwiseAbs().maxCoeff();
}

/// Code of the qthermo::Error thrown by `f`, or nullopt if none is thrown.
template <class F>
std::optional<qthermo::ErrorCode> error_code(F &&f) {
    try {
        f();
    } catch (const qthermo::Error &e) {
        return e.code();
    }
    return std::nullopt;
}

} // namespace gen

// Copyright 2026 The xtele Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Two-qubit state model: the six-parameter X state, general dense states, the
// named states used throughout, and the dirichlet-disk random X-state sampler.

#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <string>
#include <string_view>

#include "xtele/error.hpp"
#include "xtele/qmath.hpp"
#include "xtele/rng.hpp"

namespace xtele {

inline constexpr double kPopulationTol = 1e-12;
inline constexpr double kCoherenceTol = 1e-12;

/// rho = [[a,0,0,w],[0,b,z,0],[0,z*,c,0],[w*,0,0,d]] in the basis |00>,|01>,|10>,|11>.
class XState {
public:
    /// Checks the density-matrix conditions and returns the state. Populations
    /// within kPopulationTol below zero are clamped to zero; anything larger is
    /// rejected.
    static XState validate(double a, double b, double c, double d, cplx w, cplx z) {
        std::array<double *, 4> pops{&a, &b, &c, &d};
        for (double *p : pops) {
            if (!std::isfinite(*p) || *p < -kPopulationTol) {
                throw Error(ErrorCode::NegativePopulation, "population " + std::to_string(*p) + " < 0");
            }
            if (*p < 0) {
                *p = 0;
            }
        }
        if (!std::isfinite(w.real()) || !std::isfinite(w.imag()) || !std::isfinite(z.real()) ||
            !std::isfinite(z.imag())) {
            throw Error(ErrorCode::CoherenceBoundViolated, "non-finite coherence");
        }
        const double trace = a + b + c + d;
        if (!(std::abs(trace - 1.0) <= kTraceTol)) {
            throw Error(ErrorCode::NonUnitTrace, "a+b+c+d = " + std::to_string(trace));
        }
        if (std::norm(w) > a * d + kCoherenceTol) {
            throw Error(ErrorCode::CoherenceBoundViolated, "|w|^2 > ad");
        }
        if (std::norm(z) > b * c + kCoherenceTol) {
            throw Error(ErrorCode::CoherenceBoundViolated, "|z|^2 > bc");
        }
        return XState(a, b, c, d, w, z);
    }

    /// Reads the X-form entries of a 4x4 matrix. Throws NotXState if any entry
    /// off the two diagonals exceeds 1e-12 in magnitude.
    static XState from_dense(const CMatrix &rho) {
        if (rho.rows() != 4 || rho.cols() != 4) {
            throw Error(ErrorCode::NotXState, "expected a 4x4 matrix");
        }
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < 4; ++j) {
                if (i != j && i + j != 3 && std::abs(rho(i, j)) > 1e-12) {
                    throw Error(ErrorCode::NotXState, "nonzero entry outside the X pattern");
                }
            }
        }
        return validate(rho(0, 0).real(), rho(1, 1).real(), rho(2, 2).real(), rho(3, 3).real(), rho(0, 3),
                        rho(1, 2));
    }

    double a() const noexcept {
        return a_;
    }
    double b() const noexcept {
        return b_;
    }
    double c() const noexcept {
        return c_;
    }
    double d() const noexcept {
        return d_;
    }
    cplx w() const noexcept {
        return w_;
    }
    cplx z() const noexcept {
        return z_;
    }
    double abs_w() const noexcept {
        return std::abs(w_);
    }
    double abs_z() const noexcept {
        return std::abs(z_);
    }
    /// arg(w), or 0 when w = 0.
    double alpha() const noexcept {
        return w_ == cplx{} ? 0.0 : std::arg(w_);
    }
    /// arg(z), or 0 when z = 0.
    double beta() const noexcept {
        return z_ == cplx{} ? 0.0 : std::arg(z_);
    }

    CMatrix to_dense() const {
        CMatrix m(4, 4);
        m(0, 0) = a_;
        m(1, 1) = b_;
        m(2, 2) = c_;
        m(3, 3) = d_;
        m(0, 3) = w_;
        m(3, 0) = std::conj(w_);
        m(1, 2) = z_;
        m(2, 1) = std::conj(z_);
        return m;
    }

    /// Total order on the raw parameters; used for deterministic tie-breaks.
    std::array<double, 8> key() const {
        return {a_, b_, c_, d_, w_.real(), w_.imag(), z_.real(), z_.imag()};
    }

    bool operator==(const XState &) const = default;

private:
    XState(double a, double b, double c, double d, cplx w, cplx z) : a_(a), b_(b), c_(c), d_(d), w_(w), z_(z) {
    }

    double a_, b_, c_, d_;
    cplx w_, z_;
};

/// A general validated two-qubit density matrix.
class DenseState {
public:
    static DenseState validate(CMatrix rho) {
        if (rho.rows() != 4 || rho.cols() != 4) {
            throw Error(ErrorCode::InvalidDensity, "two-qubit state must be 4x4");
        }
        require_density(rho);
        return DenseState(std::move(rho));
    }

    static DenseState from(const XState &x) {
        return DenseState(x.to_dense());
    }

    const CMatrix &rho() const noexcept {
        return rho_;
    }

private:
    explicit DenseState(CMatrix rho) : rho_(std::move(rho)) {
    }

    CMatrix rho_;
};

enum class Measure { dirichlet_disk };

constexpr std::string_view measure_id(Measure m) {
    switch (m) {
        case Measure::dirichlet_disk: return "dirichlet-disk";
    }
    return "unknown";
}

struct EnsembleSpec {
    std::uint64_t sample_count = 1;
    std::uint64_t seed = 0;
    Measure measure = Measure::dirichlet_disk;

    void check() const {
        if (sample_count < 1) {
            throw Error(ErrorCode::ParamOutOfRange, "sample_count must be >= 1");
        }
    }
};

/// Generalized Bell vector:
///   0, 3: (|00> +- e^{-i alpha}|11>)/sqrt2
///   1, 2: (|01> +- e^{-i beta}|10>)/sqrt2
inline std::array<cplx, 4> generalized_bell_vector(int index, double alpha, double beta) {
    const double s = 1.0 / std::numbers::sqrt2;
    switch (index) {
        case 0: return {s, 0.0, 0.0, s * std::polar(1.0, -alpha)};
        case 1: return {0.0, s, s * std::polar(1.0, -beta), 0.0};
        case 2: return {0.0, s, -s * std::polar(1.0, -beta), 0.0};
        case 3: return {s, 0.0, 0.0, -s * std::polar(1.0, -alpha)};
        default: throw Error(ErrorCode::ParamOutOfRange, "Bell index must be 0..3");
    }
}

inline XState werner(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw Error(ErrorCode::ParamOutOfRange, "Werner weight must lie in [0, 1]");
    }
    const double outer = (1.0 - p) / 4.0;
    const double inner = (1.0 + p) / 4.0;
    return XState::validate(outer, inner, inner, outer, 0.0, -p / 2.0);
}

/// Projector onto generalized_bell_vector(index, alpha, beta).
inline XState bell(int index, double alpha = 0.0, double beta = 0.0) {
    switch (index) {
        case 0: return XState::validate(0.5, 0, 0, 0.5, 0.5 * std::polar(1.0, alpha), 0.0);
        case 3: return XState::validate(0.5, 0, 0, 0.5, -0.5 * std::polar(1.0, alpha), 0.0);
        case 1: return XState::validate(0, 0.5, 0.5, 0, 0.0, 0.5 * std::polar(1.0, beta));
        case 2: return XState::validate(0, 0.5, 0.5, 0, 0.0, -0.5 * std::polar(1.0, beta));
        default: throw Error(ErrorCode::ParamOutOfRange, "Bell index must be 0..3");
    }
}

/// (|00> + |01> + |10> - |11>)/2: Phi+ with a Hadamard on the second qubit.
inline DenseState hadamard_rotated_bell() {
    const std::array<cplx, 4> phi{0.5, 0.5, 0.5, -0.5};
    return DenseState::validate(CMatrix::outer(phi));
}

enum class GapVariant { w_side, z_side };

/// The two states where the unitary-vs-Pauli fidelity gap reaches 1/9.
inline XState extremal_gap_state(GapVariant variant) {
    constexpr double sixth = 1.0 / 6.0;
    constexpr double third = 1.0 / 3.0;
    if (variant == GapVariant::w_side) {
        return XState::validate(sixth, third, third, sixth, sixth, 0.0);
    }
    return XState::validate(third, sixth, sixth, third, 0.0, sixth);
}

/// Area-uniform point in the annulus inner_fraction*radius <= |x| <= radius.
inline cplx sample_disk(RngStream &rng, double radius, double inner_fraction = 0.0) {
    const double f2 = inner_fraction * inner_fraction;
    const double r = radius * std::sqrt(f2 + (1.0 - f2) * rng.uniform());
    return std::polar(r, rng.angle());
}

/// Uniform point on the probability simplex (Dirichlet(1,1,1,1)).
inline std::array<double, 4> sample_simplex(RngStream &rng) {
    std::array<double, 4> e{};
    double sum = 0;
    for (auto &x : e) {
        x = rng.exponential();
        sum += x;
    }
    for (auto &x : e) {
        x /= sum;
    }
    return e;
}

/// One draw from the dirichlet-disk measure.
inline XState sample_x_state(RngStream &rng) {
    const auto p = sample_simplex(rng);
    const cplx w = sample_disk(rng, std::sqrt(p[0] * p[3]));
    const cplx z = sample_disk(rng, std::sqrt(p[1] * p[2]));
    return XState::validate(p[0], p[1], p[2], p[3], w, z);
}

}  // namespace xtele

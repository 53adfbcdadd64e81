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

// Closed-form correlation, nonlocality and teleportation-fidelity quantities.
//
// For a two-qubit state the spin correlation matrix is t_nm = tr(rho s^n x s^m).
// With u1 >= u2 >= u3 the eigenvalues of T^dag T:
//   N = sqrt(u1) + sqrt(u2) + sqrt(u3)      (trace norm of T)
//   M = u1 + u2                             (CHSH violated iff M > 1)
//   B_max = 2 sqrt(M)
//   F1 = 1/2 + N/6                          (any unitary correction)
//   F2 = 1/3 + 2 F / 3                      (identity/Pauli correction)
// where F is the fully entangled fraction. For an X state
//   u = {4(|w|+|z|)^2, 4(|w|-|z|)^2, (a+d-b-c)^2}
//   chi_{0,3} = (a+d +- 2|w|)/2,  chi_{1,2} = (b+c +- 2|z|)/2,  F = max chi.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <numbers>

#include "xtele/qmath.hpp"
#include "xtele/states.hpp"

namespace xtele {

using Matrix3 = std::array<std::array<double, 3>, 3>;

struct CorrelationReport {
    Matrix3 t{};
    std::array<double, 3> u{};  // descending
    double n_value = 0;
    double m_value = 0;
    double b_max = 0;
};

struct FidelityReport {
    std::array<double, 4> chi{};
    double fef = 0;
    double f1 = 0;
    double f2 = 0;
    double gap = 0;
    double concurrence = 0;
};

struct Classification {
    bool entangled = false;
    bool violates_chsh = false;
    bool nonclassical_teleport = false;

    bool operator==(const Classification &) const = default;
};

inline constexpr double kClassicalFidelity = 2.0 / 3.0;

namespace detail {

inline CorrelationReport finish_report(const Matrix3 &t, std::array<double, 3> u) {
    for (auto &x : u) {
        x = std::max(0.0, x);
    }
    std::sort(u.begin(), u.end(), std::greater<>());
    CorrelationReport r;
    r.t = t;
    r.u = u;
    r.n_value = std::sqrt(u[0]) + std::sqrt(u[1]) + std::sqrt(u[2]);
    r.m_value = u[0] + u[1];
    r.b_max = 2.0 * std::sqrt(r.m_value);
    return r;
}

}  // namespace detail

/// t_nm = Re tr(rho s^n x s^m), n, m = 1..3, computed by direct traces.
inline Matrix3 correlation_matrix(const CMatrix &rho) {
    Matrix3 t{};
    for (int n = 1; n <= 3; ++n) {
        for (int m = 1; m <= 3; ++m) {
            t[n - 1][m - 1] = (rho * kron(pauli(n), pauli(m))).trace().real();
        }
    }
    return t;
}

inline CMatrix to_cmatrix(const Matrix3 &t) {
    CMatrix m(3, 3);
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            m(i, j) = t[i][j];
        }
    }
    return m;
}

/// Dense path: T by traces, u from the Jacobi eigensolver applied to T^dag T.
inline CorrelationReport correlation_report(const DenseState &state) {
    const Matrix3 t = correlation_matrix(state.rho());
    const auto sv = singular_values(to_cmatrix(t));
    return detail::finish_report(t, {sv[0] * sv[0], sv[1] * sv[1], sv[2] * sv[2]});
}

/// X-state path: T entries and the eigenvalues of T^dag T in closed form.
inline CorrelationReport correlation_report(const XState &x) {
    const cplx w = x.w();
    const cplx z = x.z();
    Matrix3 t{};
    t[0][0] = 2 * (w.real() + z.real());
    t[0][1] = 2 * (z.imag() - w.imag());
    t[1][0] = -2 * (w.imag() + z.imag());
    t[1][1] = 2 * (z.real() - w.real());
    t[2][2] = x.a() + x.d() - x.b() - x.c();
    const double sum = x.abs_w() + x.abs_z();
    const double diff = x.abs_w() - x.abs_z();
    return detail::finish_report(t, {4 * sum * sum, 4 * diff * diff, t[2][2] * t[2][2]});
}

/// N = 2(|w|+|z|) + 2||w|-|z|| + |a+d-b-c|.
inline double n_closed_form(const XState &x) {
    return 2 * (x.abs_w() + x.abs_z()) + 2 * std::abs(x.abs_w() - x.abs_z()) + std::abs(x.a() + x.d() - x.b() - x.c());
}

/// M = max{8(|w|^2+|z|^2), 4(|w|+|z|)^2 + (a+d-b-c)^2}.
inline double m_closed_form(const XState &x) {
    const double aw = x.abs_w();
    const double az = x.abs_z();
    const double pop = x.a() + x.d() - x.b() - x.c();
    return std::max(8 * (aw * aw + az * az), 4 * (aw + az) * (aw + az) + pop * pop);
}

/// Throws NotXState if the dense state has entries outside the X pattern.
inline double m_closed_form(const DenseState &state) {
    return m_closed_form(XState::from_dense(state.rho()));
}

/// C = 2 max{0, |w| - sqrt(bc), |z| - sqrt(ad)}.
inline double concurrence_x(const XState &x) {
    const double c1 = x.abs_w() - std::sqrt(x.b() * x.c());
    const double c2 = x.abs_z() - std::sqrt(x.a() * x.d());
    return std::min(1.0, 2 * std::max({0.0, c1, c2}));
}

inline FidelityReport fidelity_report(const XState &x) {
    FidelityReport r;
    const double ad = x.a() + x.d();
    const double bc = x.b() + x.c();
    r.chi = {(ad + 2 * x.abs_w()) / 2, (bc + 2 * x.abs_z()) / 2, (bc - 2 * x.abs_z()) / 2,
             (ad - 2 * x.abs_w()) / 2};
    r.fef = *std::max_element(r.chi.begin(), r.chi.end());
    r.f1 = 0.5 + n_closed_form(x) / 6;
    r.f2 = 1.0 / 3 + 2 * r.fef / 3;
    r.gap = r.f1 - r.f2;
    r.concurrence = concurrence_x(x);
    return r;
}

/// max_i <Psi^i|rho|Psi^i> over the generalized Bell basis with phases (alpha, beta).
inline double fef_bell_basis(const DenseState &state, double alpha = 0.0, double beta = 0.0) {
    const CMatrix &rho = state.rho();
    double best = -INFINITY;
    for (int i = 0; i < 4; ++i) {
        const auto v = generalized_bell_vector(i, alpha, beta);
        cplx acc = 0;
        for (std::size_t r = 0; r < 4; ++r) {
            for (std::size_t c = 0; c < 4; ++c) {
                acc += std::conj(v[r]) * rho(r, c) * v[c];
            }
        }
        best = std::max(best, acc.real());
    }
    return best;
}

/// Strict-inequality predicates; states exactly on a threshold are classified
/// as not satisfying it.
inline Classification classify(const XState &x) {
    const FidelityReport f = fidelity_report(x);
    return Classification{
        .entangled = f.concurrence > 0,
        .violates_chsh = m_closed_form(x) > 1,
        .nonclassical_teleport = f.f2 > kClassicalFidelity,
    };
}

}  // namespace xtele

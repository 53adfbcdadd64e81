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

// Brute-force verifiers that do not use the closed forms in metrics.hpp:
// a density-matrix simulation of the teleportation protocol, exhaustive and
// local-search optimization of Bob's corrections, CHSH measurement-angle
// optimization, and the general spin-flip concurrence.
//
// Qubit order in the 8-dimensional protocol space is (input, Alice, Bob).
// Alice projects (input, Alice) onto the generalized Bell basis; outcome i
// corresponds to generalized_bell_vector(i, alpha, beta).

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "xtele/local_search.hpp"
#include "xtele/metrics.hpp"
#include "xtele/qmath.hpp"
#include "xtele/rng.hpp"
#include "xtele/states.hpp"

namespace xtele {

struct BellBasis {
    double alpha = 0;
    double beta = 0;

    bool operator==(const BellBasis &) const = default;
};

/// Phases read straight off the coherences: (arg w, arg z).
inline BellBasis coherence_basis(const XState &x) {
    return {x.alpha(), x.beta()};
}

/// Basis under which identity/Pauli corrections attain 1/3 + 2 max(chi)/3 for
/// any X state: (arg w, -arg w) when chi_0 >= chi_1, else (arg z, -arg z).
/// With complex coherences the coherence_basis generally falls short of that.
inline BellBasis pauli_matched_basis(const XState &x) {
    const double chi0 = (x.a() + x.d()) / 2 + x.abs_w();
    const double chi1 = (x.b() + x.c()) / 2 + x.abs_z();
    const double phase = chi0 >= chi1 ? x.alpha() : x.beta();
    return {phase, phase == 0.0 ? 0.0 : -phase};
}

/// Rz(phi) Ry(theta) Rz(lambda).
inline CMatrix euler_unitary(double phi, double theta, double lambda) {
    const double c = std::cos(theta / 2);
    const double s = std::sin(theta / 2);
    const cplx ep = std::polar(1.0, -(phi + lambda) / 2);
    const cplx em = std::polar(1.0, -(phi - lambda) / 2);
    return CMatrix(2, 2, {ep * c, -em * s, std::conj(em) * s, std::conj(ep) * c});
}

using EulerAngles = std::array<double, 3>;

/// Euler angles reproducing Pauli k up to a global phase.
inline EulerAngles pauli_euler_angles(int k) {
    constexpr double pi = std::numbers::pi;
    switch (k) {
        case 0: return {0, 0, 0};
        case 1: return {pi, pi, 0};
        case 2: return {0, pi, 0};
        case 3: return {pi, 0, 0};
        default: throw Error(ErrorCode::ParamOutOfRange, "Pauli index must be 0..3");
    }
}

/// Bob's correction for each of Alice's four outcomes.
class CorrectionScheme {
public:
    enum class Mode { pauli, unitary };

    /// labels[i] in 0..3 selects I, s^1, s^2, s^3 for outcome i.
    static CorrectionScheme paulis(const std::array<int, 4> &labels) {
        CorrectionScheme s;
        s.mode_ = Mode::pauli;
        s.labels_ = labels;
        for (std::size_t i = 0; i < 4; ++i) {
            s.matrices_[i] = pauli(labels[i]);
        }
        return s;
    }

    static CorrectionScheme unitaries(const std::array<EulerAngles, 4> &angles) {
        CorrectionScheme s;
        s.mode_ = Mode::unitary;
        s.angles_ = angles;
        for (std::size_t i = 0; i < 4; ++i) {
            s.matrices_[i] = euler_unitary(angles[i][0], angles[i][1], angles[i][2]);
        }
        return s;
    }

    /// Arbitrary 2x2 corrections; throws NonUnitaryCorrection unless each is
    /// unitary within 1e-10.
    static CorrectionScheme from_matrices(const std::array<CMatrix, 4> &ms) {
        for (const auto &m : ms) {
            if (m.rows() != 2 || m.cols() != 2 || (m.adjoint() * m).max_abs_diff(CMatrix::identity(2)) > 1e-10) {
                throw Error(ErrorCode::NonUnitaryCorrection, "correction is not a 2x2 unitary");
            }
        }
        CorrectionScheme s;
        s.mode_ = Mode::unitary;
        s.matrices_ = ms;
        return s;
    }

    static CorrectionScheme standard() {
        return paulis({0, 1, 2, 3});
    }

    Mode mode() const noexcept {
        return mode_;
    }
    const std::array<int, 4> &pauli_labels() const noexcept {
        return labels_;
    }
    const std::optional<std::array<EulerAngles, 4>> &angles() const noexcept {
        return angles_;
    }
    const std::array<CMatrix, 4> &matrices() const noexcept {
        return matrices_;
    }

private:
    CorrectionScheme() = default;

    Mode mode_ = Mode::pauli;
    std::array<int, 4> labels_{0, 0, 0, 0};
    std::optional<std::array<EulerAngles, 4>> angles_;
    std::array<CMatrix, 4> matrices_;
};

struct TeleportOutcome {
    int outcome_index = 0;
    double probability = 0;
    CMatrix bob_state;        // conditional state before correction
    CMatrix corrected_state;  // after Bob's correction
};

struct TeleportResult {
    std::array<TeleportOutcome, 4> outcomes;
    double fidelity = 0;
};

namespace detail {

inline CMatrix normalized_or_mixed(const CMatrix &unnormalized, double p) {
    if (p > 1e-14) {
        return unnormalized * cplx(1.0 / p);
    }
    return CMatrix::identity(2) * cplx(0.5);
}

/// Bob's unnormalized conditional state for outcome i given input operator
/// rho_in, by building the full 8x8 operator and tracing out (input, Alice).
inline CMatrix bob_unnormalized(const CMatrix &rho_in, const CMatrix &channel, int outcome, const BellBasis &basis) {
    const auto v = generalized_bell_vector(outcome, basis.alpha, basis.beta);
    const CMatrix proj = kron(CMatrix::outer(v), CMatrix::identity(2));
    const CMatrix total = kron(rho_in, channel);
    static constexpr int kTraced[] = {0, 1};
    return partial_trace_unchecked(proj * total * proj, kTraced);
}

}  // namespace detail

/// One run of the protocol for a pure input.
inline TeleportResult teleport_once(const DenseState &channel, const PureQubit &input, const BellBasis &basis,
                                    const CorrectionScheme &scheme) {
    const CMatrix rho_in = input.projector();
    const auto psi = input.amplitudes();
    TeleportResult result;
    for (int i = 0; i < 4; ++i) {
        const CMatrix bob = detail::bob_unnormalized(rho_in, channel.rho(), i, basis);
        const double p = std::max(0.0, bob.trace().real());
        TeleportOutcome &o = result.outcomes[i];
        o.outcome_index = i;
        o.probability = p;
        o.bob_state = detail::normalized_or_mixed(bob, p);
        const CMatrix &v = scheme.matrices()[i];
        o.corrected_state = v * o.bob_state * v.adjoint();
        result.fidelity += p * detail::expectation(psi, o.corrected_state);
    }
    return result;
}

/// The protocol as a linear map: Bob's unnormalized state for each outcome and
/// each input matrix unit |j><k|. Applying it to |psi><psi| reproduces
/// teleport_once without rebuilding 8x8 operators.
class TeleportationMap {
public:
    TeleportationMap(const DenseState &channel, const BellBasis &basis) {
        for (int i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < 2; ++j) {
                for (std::size_t k = 0; k < 2; ++k) {
                    CMatrix unit(2, 2);
                    unit(j, k) = 1.0;
                    units_[i][j][k] = detail::bob_unnormalized(unit, channel.rho(), i, basis);
                }
            }
        }
    }

    /// Unnormalized Bob state for outcome i; its trace is the outcome probability.
    CMatrix bob_unnormalized(int outcome, const std::array<cplx, 2> &psi) const {
        CMatrix out(2, 2);
        for (std::size_t j = 0; j < 2; ++j) {
            for (std::size_t k = 0; k < 2; ++k) {
                out += units_[outcome][j][k] * (psi[j] * std::conj(psi[k]));
            }
        }
        return out;
    }

    /// sum_i <psi| V_i B_i V_i^dag |psi>.
    double fidelity(const std::array<cplx, 2> &psi, const CorrectionScheme &scheme) const {
        double f = 0;
        for (int i = 0; i < 4; ++i) {
            f += corrected_overlap(psi, bob_unnormalized(i, psi), scheme.matrices()[i]);
        }
        return f;
    }

    static double corrected_overlap(const std::array<cplx, 2> &psi, const CMatrix &bob, const CMatrix &v) {
        // <psi|V B V^dag|psi> = <phi|B|phi> with phi = V^dag psi.
        const std::array<cplx, 2> phi{std::conj(v(0, 0)) * psi[0] + std::conj(v(1, 0)) * psi[1],
                                      std::conj(v(0, 1)) * psi[0] + std::conj(v(1, 1)) * psi[1]};
        return detail::expectation(phi, bob);
    }

private:
    std::array<std::array<std::array<CMatrix, 2>, 2>, 4> units_;
};

struct Octahedral6 {};
struct MonteCarloQuadrature {
    std::uint64_t samples = 100000;
    std::uint64_t seed = 0;
};
using Quadrature = std::variant<Octahedral6, MonteCarloQuadrature>;

struct FidelityEstimate {
    double mean = 0;
    double std_error = 0;  // zero for the exact octahedral rule
};

/// Haar-uniform pure qubit.
inline PureQubit haar_qubit(RngStream &rng) {
    const double theta = std::acos(std::clamp(1.0 - 2.0 * rng.uniform(), -1.0, 1.0));
    return PureQubit{theta, rng.angle()};
}

inline FidelityEstimate average_fidelity(const TeleportationMap &map, const CorrectionScheme &scheme,
                                         const Quadrature &quadrature) {
    if (std::holds_alternative<Octahedral6>(quadrature)) {
        double sum = 0;
        for (const auto &q : PureQubit::octahedron()) {
            sum += map.fidelity(q.amplitudes(), scheme);
        }
        return {sum / 6.0, 0.0};
    }
    const auto &mc = std::get<MonteCarloQuadrature>(quadrature);
    if (mc.samples < 2) {
        throw Error(ErrorCode::ParamOutOfRange, "Monte Carlo quadrature needs at least 2 samples");
    }
    RngStream rng(mc.seed);
    double mean = 0;
    double m2 = 0;
    for (std::uint64_t n = 1; n <= mc.samples; ++n) {
        const double f = map.fidelity(haar_qubit(rng).amplitudes(), scheme);
        const double delta = f - mean;
        mean += delta / static_cast<double>(n);
        m2 += delta * (f - mean);
    }
    const double var = m2 / static_cast<double>(mc.samples - 1);
    return {mean, std::sqrt(var / static_cast<double>(mc.samples))};
}

inline FidelityEstimate average_fidelity(const DenseState &channel, const BellBasis &basis,
                                         const CorrectionScheme &scheme, const Quadrature &quadrature) {
    return average_fidelity(TeleportationMap(channel, basis), scheme, quadrature);
}

struct SchemeSearchResult {
    double fidelity = 0;
    CorrectionScheme scheme = CorrectionScheme::standard();
};

/// Exhaustive search over all 4^4 identity/Pauli assignments using the
/// octahedral average. Assignment k gives outcome i the label (k >> 2(3-i)) & 3;
/// ties keep the smallest k.
inline SchemeSearchResult best_pauli_fidelity(const DenseState &channel, const BellBasis &basis) {
    const TeleportationMap map(channel, basis);
    const auto inputs = PureQubit::octahedron();
    // overlap[i][label] = sum over inputs of the corrected overlap.
    std::array<std::array<double, 4>, 4> overlap{};
    std::array<CMatrix, 4> paulis{pauli(0), pauli(1), pauli(2), pauli(3)};
    for (const auto &q : inputs) {
        const auto psi = q.amplitudes();
        for (int i = 0; i < 4; ++i) {
            const CMatrix bob = map.bob_unnormalized(i, psi);
            for (int l = 0; l < 4; ++l) {
                overlap[i][l] += TeleportationMap::corrected_overlap(psi, bob, paulis[l]);
            }
        }
    }
    double best = -INFINITY;
    std::array<int, 4> best_labels{};
    for (int k = 0; k < 256; ++k) {
        std::array<int, 4> labels{};
        double total = 0;
        for (int i = 0; i < 4; ++i) {
            labels[i] = (k >> (2 * (3 - i))) & 3;
            total += overlap[i][labels[i]];
        }
        total /= 6.0;
        if (total > best) {
            best = total;
            best_labels = labels;
        }
    }
    return {best, CorrectionScheme::paulis(best_labels)};
}

/// Multi-start local search over four independent SU(2) corrections (12 Euler
/// angles), maximizing the octahedral average. Start 0 is the best Pauli
/// assignment, so the result never falls below best_pauli_fidelity.
inline SchemeSearchResult best_unitary_fidelity(const DenseState &channel, const BellBasis &basis, int restarts = 32,
                                                double tol = 1e-4, std::uint64_t seed = 0x5eed) {
    if (restarts < 1) {
        throw Error(ErrorCode::ParamOutOfRange, "restarts must be >= 1");
    }
    const TeleportationMap map(channel, basis);
    std::array<std::array<cplx, 2>, 6> inputs{};
    const auto oct = PureQubit::octahedron();
    for (std::size_t k = 0; k < 6; ++k) {
        inputs[k] = oct[k].amplitudes();
    }
    // Cache Bob's unnormalized states; only the corrections vary.
    std::array<std::array<CMatrix, 4>, 6> bobs;
    for (std::size_t k = 0; k < 6; ++k) {
        for (int i = 0; i < 4; ++i) {
            bobs[k][i] = map.bob_unnormalized(i, inputs[k]);
        }
    }
    auto objective = [&](std::span<const double> x) {
        double total = 0;
        for (int i = 0; i < 4; ++i) {
            const CMatrix v = euler_unitary(x[3 * i], x[3 * i + 1], x[3 * i + 2]);
            for (std::size_t k = 0; k < 6; ++k) {
                total += TeleportationMap::corrected_overlap(inputs[k], bobs[k][i], v);
            }
        }
        return total / 6.0;
    };

    const auto pauli_best = best_pauli_fidelity(channel, basis);
    std::vector<double> first(12);
    for (std::size_t i = 0; i < 4; ++i) {
        const auto e = pauli_euler_angles(pauli_best.scheme.pauli_labels()[i]);
        std::copy(e.begin(), e.end(), first.begin() + 3 * i);
    }
    std::vector<double> lower(12, 0.0);
    std::vector<double> upper(12);
    for (std::size_t i = 0; i < 4; ++i) {
        upper[3 * i] = 2 * std::numbers::pi;
        upper[3 * i + 1] = std::numbers::pi;
        upper[3 * i + 2] = 2 * std::numbers::pi;
    }
    SearchSchedule schedule;
    schedule.final_step = tol;
    const auto r = multi_start_maximize(objective, lower, upper, restarts, seed, schedule, first);
    std::array<EulerAngles, 4> angles{};
    for (std::size_t i = 0; i < 4; ++i) {
        angles[i] = {r.x[3 * i], r.x[3 * i + 1], r.x[3 * i + 2]};
    }
    if (r.value <= pauli_best.fidelity) {
        return pauli_best;
    }
    return {r.value, CorrectionScheme::unitaries(angles)};
}

struct ChshResult {
    double value = 0;
    std::array<std::array<double, 3>, 4> settings{};  // a, a', b, b'
};

namespace detail {

inline std::array<double, 3> unit_vector(double theta, double phi) {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
}

}  // namespace detail

/// max |tr(rho B_CHSH)| over measurement directions, with
/// B_CHSH = a.s x (b + b').s + a'.s x (b - b').s, by multi-start search over
/// eight spherical angles.
inline ChshResult chsh_maximize(const DenseState &state, int restarts = 32, std::uint64_t seed = 0xc45) {
    if (restarts < 1) {
        throw Error(ErrorCode::ParamOutOfRange, "restarts must be >= 1");
    }
    // <s^n x s^m> by explicit operator traces.
    std::array<std::array<double, 3>, 3> corr{};
    for (int n = 0; n < 3; ++n) {
        for (int m = 0; m < 3; ++m) {
            const CMatrix op = kron(pauli(n + 1), pauli(m + 1));
            cplx tr = 0;
            for (std::size_t r = 0; r < 4; ++r) {
                for (std::size_t c = 0; c < 4; ++c) {
                    tr += state.rho()(r, c) * op(c, r);
                }
            }
            corr[n][m] = tr.real();
        }
    }
    auto correlation = [&](const std::array<double, 3> &x, const std::array<double, 3> &y) {
        double s = 0;
        for (int n = 0; n < 3; ++n) {
            for (int m = 0; m < 3; ++m) {
                s += x[n] * corr[n][m] * y[m];
            }
        }
        return s;
    };
    auto objective = [&](std::span<const double> p) {
        const auto a = detail::unit_vector(p[0], p[1]);
        const auto a2 = detail::unit_vector(p[2], p[3]);
        const auto b = detail::unit_vector(p[4], p[5]);
        const auto b2 = detail::unit_vector(p[6], p[7]);
        return correlation(a, b) + correlation(a, b2) + correlation(a2, b) - correlation(a2, b2);
    };
    std::vector<double> lower(8, 0.0);
    std::vector<double> upper(8);
    for (std::size_t i = 0; i < 8; i += 2) {
        upper[i] = std::numbers::pi;
        upper[i + 1] = 2 * std::numbers::pi;
    }
    const auto r = multi_start_maximize(objective, lower, upper, restarts, seed);
    ChshResult out;
    out.value = std::abs(r.value);
    for (std::size_t k = 0; k < 4; ++k) {
        out.settings[k] = detail::unit_vector(r.x[2 * k], r.x[2 * k + 1]);
    }
    return out;
}

/// Wootters concurrence C = max{0, l1 - l2 - l3 - l4}, with l_i the descending
/// square roots of the eigenvalues of rho rho~, rho~ = (s2 x s2) rho* (s2 x s2).
/// For any factorization rho = W W^dag the l_i are the singular values of
/// W^T (s2 x s2) W; working with those avoids square roots of eigenvalues
/// that are zero up to rounding, which cost 1e-8 accuracy on pure states.
inline double wootters_concurrence(const DenseState &state) {
    const CMatrix w = psd_factor(state.rho());
    const CMatrix tau = w.transpose() * kron(pauli(2), pauli(2)) * w;
    const auto l = singular_values(tau);
    return std::clamp(l[0] - l[1] - l[2] - l[3], 0.0, 1.0);
}

}  // namespace xtele

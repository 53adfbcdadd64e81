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


#include "xtele/qmath.hpp"

#include <numbers>

#include "gtest/gtest.h"
#include "test_util.hpp"

using namespace xtele;

namespace {

CMatrix ket(std::initializer_list<cplx> v) {
    return CMatrix(v.size(), 1, v);
}

CMatrix phi_plus() {
    const double s = 0.5;
    return CMatrix(4, 4, {s, 0, 0, s, 0, 0, 0, 0, 0, 0, 0, 0, s, 0, 0, s});
}

}  // namespace

TEST(qmath, pauli_matrices_exact) {
    ASSERT_EQ(pauli(0), CMatrix::identity(2));
    ASSERT_EQ(pauli(1), CMatrix(2, 2, {0, 1, 1, 0}));
    ASSERT_EQ(pauli(2), CMatrix(2, 2, {0, cplx(0, -1), cplx(0, 1), 0}));
    ASSERT_EQ(pauli(3), CMatrix(2, 2, {1, 0, 0, -1}));
    ASSERT_THROW(pauli(4), Error);
}

TEST(qmath, kron_examples) {
    ASSERT_EQ(kron(CMatrix::identity(2), CMatrix::identity(2)), CMatrix::identity(4));
    const double zz[] = {1, -1, -1, 1};
    ASSERT_EQ(kron(pauli(3), pauli(3)), CMatrix::diagonal(zz));
    ASSERT_EQ(kron(pauli(1), pauli(1)) * ket({1, 0, 0, 0}), ket({0, 0, 0, 1}));
}

TEST(qmath, kron_index_layout) {
    std::mt19937_64 gen(3);
    const CMatrix a = test_util::random_matrix(2, 3, gen);
    const CMatrix b = test_util::random_matrix(3, 2, gen);
    const CMatrix k = kron(a, b);
    ASSERT_EQ(k.rows(), 6u);
    ASSERT_EQ(k.cols(), 6u);
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            for (std::size_t r = 0; r < 3; ++r) {
                for (std::size_t c = 0; c < 2; ++c) {
                    ASSERT_EQ(k(i * 3 + r, j * 2 + c), a(i, j) * b(r, c));
                }
            }
        }
    }
}

TEST(qmath, kron_bilinear_and_associative) {
    std::mt19937_64 gen(7);
    for (int trial = 0; trial < 50; ++trial) {
        const CMatrix a = test_util::random_matrix(2, 2, gen);
        const CMatrix a2 = test_util::random_matrix(2, 2, gen);
        const CMatrix b = test_util::random_matrix(2, 2, gen);
        const CMatrix c = test_util::random_matrix(2, 2, gen);
        const cplx s(0.3, -1.7);
        ASSERT_LE(kron(a + a2 * s, b).max_abs_diff(kron(a, b) + kron(a2, b) * s), 1e-12);
        ASSERT_LE(kron(b, a + a2 * s).max_abs_diff(kron(b, a) + kron(b, a2) * s), 1e-12);
        ASSERT_LE(kron(kron(a, b), c).max_abs_diff(kron(a, kron(b, c))), 1e-12);
    }
}

TEST(qmath, eigenvalue_examples) {
    const double d[] = {3, 1, 2};
    auto ev = hermitian_eigenvalues(CMatrix::diagonal(d));
    ASSERT_EQ(ev.size(), 3u);
    EXPECT_NEAR(ev[0], 1, 1e-12);
    EXPECT_NEAR(ev[1], 2, 1e-12);
    EXPECT_NEAR(ev[2], 3, 1e-12);

    ev = hermitian_eigenvalues(pauli(1));
    EXPECT_NEAR(ev[0], -1, 1e-12);
    EXPECT_NEAR(ev[1], 1, 1e-12);

    // T for Phi+ is diag(1, -1, 1), so T^dag T = I.
    CMatrix t(3, 3);
    for (int n = 1; n <= 3; ++n) {
        for (int m = 1; m <= 3; ++m) {
            t(n - 1, m - 1) = (phi_plus() * kron(pauli(n), pauli(m))).trace().real();
        }
    }
    const double expected_t[] = {1, -1, 1};
    ASSERT_LE(t.max_abs_diff(CMatrix::diagonal(expected_t)), 1e-15);
    for (double v : hermitian_eigenvalues(t.adjoint() * t)) {
        EXPECT_NEAR(v, 1, 1e-12);
    }
}

TEST(qmath, eigenvalues_reject_non_hermitian) {
    const CMatrix m(2, 2, {0, 1, 0, 0});
    try {
        hermitian_eigenvalues(m);
        FAIL();
    } catch (const Error &e) {
        ASSERT_EQ(e.code(), ErrorCode::NotHermitian);
    }
    ASSERT_THROW(hermitian_eigenvalues(CMatrix(2, 3)), Error);
    // Defects inside the tolerance are accepted.
    ASSERT_NO_THROW(hermitian_eigenvalues(CMatrix(2, 2, {1, 1e-11, 0, 1})));
}

TEST(qmath, eigenvalues_recover_unitary_conjugation) {
    std::mt19937_64 gen(11);
    std::uniform_real_distribution<double> u(-2, 2);
    for (std::size_t n : {2u, 3u, 4u}) {
        for (int trial = 0; trial < 200; ++trial) {
            std::vector<double> d(n);
            for (auto &v : d) {
                v = u(gen);
            }
            if (trial % 5 == 0) {
                d[1] = d[0];  // degenerate pair
            }
            const CMatrix q = test_util::random_unitary(n, gen);
            CMatrix a = q * CMatrix::diagonal(d) * q.adjoint();
            a = (a + a.adjoint()) * cplx(0.5);
            const auto ev = hermitian_eigenvalues(a);
            std::sort(d.begin(), d.end());
            for (std::size_t i = 0; i < n; ++i) {
                ASSERT_NEAR(ev[i], d[i], 1e-9);
            }
        }
    }
}

TEST(qmath, eigenvalues_satisfy_characteristic_identity) {
    // det(A - lambda I) = 0 for each returned eigenvalue, checked via the
    // product of the other eigen-gaps: tr and tr(A^2) must match power sums.
    std::mt19937_64 gen(5);
    for (int trial = 0; trial < 200; ++trial) {
        const CMatrix g = test_util::random_matrix(4, 4, gen);
        const CMatrix a = g + g.adjoint();
        const auto ev = hermitian_eigenvalues(a);
        CMatrix power = CMatrix::identity(4);
        for (int k = 1; k <= 4; ++k) {
            power = power * a;
            double sum = 0;
            for (double v : ev) {
                sum += std::pow(v, k);
            }
            ASSERT_NEAR(power.trace().real(), sum, 1e-9 * std::max(1.0, std::abs(sum)));
        }
    }
}

TEST(qmath, trace_norm_examples) {
    ASSERT_EQ(trace_norm(CMatrix(3, 3)), 0);
    const double d[] = {1, -1, 1};
    ASSERT_NEAR(trace_norm(CMatrix::diagonal(d)), 3, 1e-12);
    const double w[] = {-0.8, -0.8, -0.8};
    ASSERT_NEAR(trace_norm(CMatrix::diagonal(w)), 2.4, 1e-12);
}

TEST(qmath, trace_norm_matches_symmetric_embedding) {
    // Eigenvalues of [[0, T], [T^T, 0]] are +-singular values of T.
    std::mt19937_64 gen(13);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 500; ++trial) {
        CMatrix t(3, 3);
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < 3; ++j) {
                t(i, j) = g(gen);
            }
        }
        if (trial % 7 == 0) {
            for (std::size_t j = 0; j < 3; ++j) {
                t(2, j) = 0;  // rank deficient
            }
        }
        CMatrix e(6, 6);
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < 3; ++j) {
                e(i, 3 + j) = t(i, j);
                e(3 + j, i) = t(i, j);
            }
        }
        double sum = 0;
        for (double v : hermitian_eigenvalues(e)) {
            sum += std::abs(v);
        }
        ASSERT_NEAR(trace_norm(t), sum / 2, 1e-9);
    }
}

TEST(qmath, pure_qubit_unit_norm) {
    std::mt19937_64 gen(17);
    std::uniform_real_distribution<double> u(0, 1);
    for (int trial = 0; trial < 1000; ++trial) {
        const PureQubit q{std::numbers::pi * u(gen), 2 * std::numbers::pi * u(gen)};
        const auto a = q.amplitudes();
        ASSERT_NEAR(std::norm(a[0]) + std::norm(a[1]), 1, 1e-12);
    }
}

TEST(qmath, pure_fidelity_examples) {
    const PureQubit zero{0, 0};
    const PureQubit plus{std::numbers::pi / 2, 0};
    const CMatrix p0(2, 2, {1, 0, 0, 0});
    ASSERT_NEAR(pure_fidelity(zero, p0), 1, 1e-15);
    ASSERT_NEAR(pure_fidelity(zero, CMatrix::identity(2) * cplx(0.5)), 0.5, 1e-15);
    ASSERT_NEAR(pure_fidelity(plus, p0), 0.5, 1e-15);
    // Rounding just above 1 clamps.
    ASSERT_EQ(pure_fidelity(zero, CMatrix(2, 2, {1 + 1e-13, 0, 0, -1e-13})), 1.0);
}

TEST(qmath, pure_fidelity_rejects_invalid_density) {
    const PureQubit zero{0, 0};
    for (const CMatrix &bad : {CMatrix(2, 2, {1, 0, 0, 1}), CMatrix(2, 2, {1.5, 0, 0, -0.5}),
                               CMatrix(2, 2, {0.5, 1, 0, 0.5})}) {
        try {
            pure_fidelity(zero, bad);
            FAIL();
        } catch (const Error &e) {
            ASSERT_TRUE(e.code() == ErrorCode::InvalidDensity || e.code() == ErrorCode::NotHermitian);
        }
    }
}

TEST(qmath, partial_trace_examples) {
    const CMatrix half = CMatrix::identity(2) * cplx(0.5);
    ASSERT_LE(partial_trace(phi_plus(), {1}).max_abs_diff(half), 1e-15);

    const CMatrix ra(2, 2, {0.7, cplx(0.1, 0.2), cplx(0.1, -0.2), 0.3});
    const CMatrix rb(2, 2, {0.4, 0.25, 0.25, 0.6});
    ASSERT_LE(partial_trace(kron(ra, rb), {1}).max_abs_diff(ra), 1e-15);
    ASSERT_LE(partial_trace(kron(ra, rb), {0}).max_abs_diff(rb), 1e-15);

    const CMatrix zero(2, 2, {1, 0, 0, 0});
    const CMatrix three = kron(zero, phi_plus());
    ASSERT_LE(partial_trace(three, {1, 2}).max_abs_diff(zero), 1e-15);
    ASSERT_LE(partial_trace(three, {0, 1}).max_abs_diff(half), 1e-15);
}

TEST(qmath, partial_trace_errors) {
    auto code_of = [](auto &&fn) {
        try {
            fn();
        } catch (const Error &e) {
            return e.code();
        }
        return ErrorCode::IoError;
    };
    ASSERT_EQ(code_of([] { partial_trace(CMatrix::identity(4) * cplx(0.25), {2}); }), ErrorCode::BadSubsystemSpec);
    ASSERT_EQ(code_of([] { partial_trace(CMatrix::identity(4) * cplx(0.25), {0, 0}); }), ErrorCode::BadSubsystemSpec);
    ASSERT_EQ(code_of([] { partial_trace(CMatrix::identity(2) * cplx(0.5), {0}); }), ErrorCode::BadSubsystemSpec);
    ASSERT_EQ(code_of([] { partial_trace(CMatrix::identity(4), {0}); }), ErrorCode::InvalidDensity);
}

TEST(qmath, partial_trace_properties) {
    std::mt19937_64 gen(19);
    for (int trial = 0; trial < 100; ++trial) {
        const CMatrix rho = test_util::random_density(gen);
        const CMatrix a = partial_trace(rho, {1});
        const CMatrix b = partial_trace(rho, {0});
        ASSERT_NEAR(a.trace().real(), 1, 1e-12);
        ASSERT_NEAR(b.trace().real(), 1, 1e-12);
        ASSERT_LE(hermiticity_defect(a), 1e-14);
        ASSERT_NEAR(a.trace().real(), rho.trace().real(), 1e-12);

        const CMatrix rho8 = kron(rho, a);
        ASSERT_LE(partial_trace(rho8, {2}).max_abs_diff(rho), 1e-14);
        const CMatrix stepwise = partial_trace(partial_trace(rho8, {2}), {1});
        ASSERT_LE(stepwise.max_abs_diff(partial_trace(rho8, {1, 2})), 1e-14);
        ASSERT_NEAR(stepwise.trace().real(), rho8.trace().real(), 1e-12);
    }
}

TEST(qmath, hermitian_function_square_root) {
    std::mt19937_64 gen(23);
    for (int trial = 0; trial < 100; ++trial) {
        const CMatrix rho = test_util::random_density(gen);
        const CMatrix root = hermitian_function(rho, [](double v) { return std::sqrt(std::max(v, 0.0)); });
        ASSERT_LE((root * root).max_abs_diff(rho), 1e-12);
    }
}

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

// Small dense complex linear algebra (2x2 up to 8x8). Everything here is a pure
// function of its arguments. Indexing is row-major and 0-based; for multi-qubit
// operators the first tensor factor is the most significant bit, so the
// two-qubit basis order is |00>, |01>, |10>, |11>.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "xtele/error.hpp"

namespace xtele {

using cplx = std::complex<double>;

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kTraceTol = 1e-10;
inline constexpr double kPsdTol = 1e-10;

class CMatrix {
public:
    CMatrix() = default;

    CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {
    }

    CMatrix(std::size_t rows, std::size_t cols, std::initializer_list<cplx> entries)
        : rows_(rows), cols_(cols), data_(entries) {
        if (data_.size() != rows * cols) {
            throw std::invalid_argument("CMatrix: entry count does not match shape");
        }
    }

    static CMatrix identity(std::size_t n) {
        CMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    static CMatrix diagonal(std::span<const double> values) {
        CMatrix m(values.size(), values.size());
        for (std::size_t i = 0; i < values.size(); ++i) {
            m(i, i) = values[i];
        }
        return m;
    }

    /// |v><v| for a column vector v.
    static CMatrix outer(std::span<const cplx> v) {
        CMatrix m(v.size(), v.size());
        for (std::size_t i = 0; i < v.size(); ++i) {
            for (std::size_t j = 0; j < v.size(); ++j) {
                m(i, j) = v[i] * std::conj(v[j]);
            }
        }
        return m;
    }

    std::size_t rows() const noexcept {
        return rows_;
    }
    std::size_t cols() const noexcept {
        return cols_;
    }
    bool is_square() const noexcept {
        return rows_ == cols_;
    }

    cplx &operator()(std::size_t i, std::size_t j) {
        return data_[i * cols_ + j];
    }
    const cplx &operator()(std::size_t i, std::size_t j) const {
        return data_[i * cols_ + j];
    }

    std::span<const cplx> entries() const noexcept {
        return data_;
    }

    CMatrix adjoint() const {
        CMatrix m(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                m(j, i) = std::conj((*this)(i, j));
            }
        }
        return m;
    }

    CMatrix transpose() const {
        CMatrix m(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                m(j, i) = (*this)(i, j);
            }
        }
        return m;
    }

    CMatrix conj() const {
        CMatrix m = *this;
        for (auto &x : m.data_) {
            x = std::conj(x);
        }
        return m;
    }

    cplx trace() const {
        cplx t = 0;
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) {
            t += (*this)(i, i);
        }
        return t;
    }

    /// Largest entrywise absolute difference; shapes must agree.
    double max_abs_diff(const CMatrix &other) const {
        if (rows_ != other.rows_ || cols_ != other.cols_) {
            throw std::invalid_argument("CMatrix: shape mismatch");
        }
        double m = 0;
        for (std::size_t k = 0; k < data_.size(); ++k) {
            m = std::max(m, std::abs(data_[k] - other.data_[k]));
        }
        return m;
    }

    CMatrix &operator+=(const CMatrix &o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) {
            data_[k] += o.data_[k];
        }
        return *this;
    }
    CMatrix &operator-=(const CMatrix &o) {
        check_same_shape(o);
        for (std::size_t k = 0; k < data_.size(); ++k) {
            data_[k] -= o.data_[k];
        }
        return *this;
    }
    CMatrix &operator*=(cplx s) {
        for (auto &x : data_) {
            x *= s;
        }
        return *this;
    }

    friend CMatrix operator+(CMatrix a, const CMatrix &b) {
        return a += b;
    }
    friend CMatrix operator-(CMatrix a, const CMatrix &b) {
        return a -= b;
    }
    friend CMatrix operator*(CMatrix a, cplx s) {
        return a *= s;
    }
    friend CMatrix operator*(cplx s, CMatrix a) {
        return a *= s;
    }

    friend CMatrix operator*(const CMatrix &a, const CMatrix &b) {
        if (a.cols_ != b.rows_) {
            throw std::invalid_argument("CMatrix: inner dimensions differ");
        }
        CMatrix m(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i) {
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const cplx aik = a(i, k);
                if (aik == cplx{}) {
                    continue;
                }
                for (std::size_t j = 0; j < b.cols_; ++j) {
                    m(i, j) += aik * b(k, j);
                }
            }
        }
        return m;
    }

    bool operator==(const CMatrix &) const = default;

private:
    void check_same_shape(const CMatrix &o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_) {
            throw std::invalid_argument("CMatrix: shape mismatch");
        }
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cplx> data_;
};

/// Pauli matrix by index: 0 -> identity, 1..3 -> sigma^1..sigma^3.
inline CMatrix pauli(int k) {
    using namespace std::complex_literals;
    switch (k) {
        case 0: return CMatrix(2, 2, {1.0, 0.0, 0.0, 1.0});
        case 1: return CMatrix(2, 2, {0.0, 1.0, 1.0, 0.0});
        case 2: return CMatrix(2, 2, {0.0, -1.0i, 1.0i, 0.0});
        case 3: return CMatrix(2, 2, {1.0, 0.0, 0.0, -1.0});
        default: throw Error(ErrorCode::ParamOutOfRange, "Pauli index must be 0..3");
    }
}

inline CMatrix kron(const CMatrix &a, const CMatrix &b) {
    CMatrix m(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const cplx aij = a(i, j);
            for (std::size_t k = 0; k < b.rows(); ++k) {
                for (std::size_t l = 0; l < b.cols(); ++l) {
                    m(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
                }
            }
        }
    }
    return m;
}

inline double hermiticity_defect(const CMatrix &a) {
    if (!a.is_square()) {
        return INFINITY;
    }
    double m = 0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = i; j < a.cols(); ++j) {
            m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
        }
    }
    return m;
}

namespace detail {

/// Cyclic Jacobi on a real symmetric n x n matrix stored row-major in `a`.
/// On return the diagonal of `a` holds the eigenvalues. If `vectors` is
/// non-null it receives the orthogonal matrix whose columns are eigenvectors.
inline void jacobi_symmetric(std::vector<double> &a, std::size_t n, std::vector<double> *vectors) {
    constexpr double kOffTol = 1e-12;
    constexpr int kMaxSweeps = 100;
    auto at = [&](std::size_t i, std::size_t j) -> double & { return a[i * n + j]; };
    if (vectors != nullptr) {
        vectors->assign(n * n, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            (*vectors)[i * n + i] = 1.0;
        }
    }
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double off = 0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (i != j) {
                    off += at(i, j) * at(i, j);
                }
            }
        }
        if (std::sqrt(off) <= kOffTol) {
            return;
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = at(p, q);
                if (apq == 0.0) {
                    continue;
                }
                const double theta = (at(q, q) - at(p, p)) / (2.0 * apq);
                const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = at(k, p);
                    const double akq = at(k, q);
                    at(k, p) = c * akp - s * akq;
                    at(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = at(p, k);
                    const double aqk = at(q, k);
                    at(p, k) = c * apk - s * aqk;
                    at(q, k) = s * apk + c * aqk;
                }
                at(p, q) = 0.0;
                at(q, p) = 0.0;
                if (vectors != nullptr) {
                    auto &v = *vectors;
                    for (std::size_t k = 0; k < n; ++k) {
                        const double vkp = v[k * n + p];
                        const double vkq = v[k * n + q];
                        v[k * n + p] = c * vkp - s * vkq;
                        v[k * n + q] = s * vkp + c * vkq;
                    }
                }
            }
        }
    }
}

/// Real symmetric embedding [[Re, -Im], [Im, Re]] of a Hermitian matrix.
/// Each eigenvalue of the Hermitian matrix appears twice in the embedding.
inline std::vector<double> real_embedding(const CMatrix &a) {
    const std::size_t n = a.rows();
    const std::size_t m = 2 * n;
    std::vector<double> e(m * m);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            // Symmetrize so the embedding is exactly symmetric.
            const cplx h = 0.5 * (a(i, j) + std::conj(a(j, i)));
            e[i * m + j] = h.real();
            e[(i + n) * m + (j + n)] = h.real();
            e[i * m + (j + n)] = -h.imag();
            e[(i + n) * m + j] = h.imag();
        }
    }
    return e;
}

inline void require_hermitian(const CMatrix &a) {
    if (!a.is_square()) {
        throw Error(ErrorCode::NotHermitian, "matrix is not square");
    }
    const double defect = hermiticity_defect(a);
    if (!(defect <= kHermitianTol)) {
        throw Error(ErrorCode::NotHermitian, "max |A - A^dag| = " + std::to_string(defect));
    }
}

}  // namespace detail

/// All eigenvalues of a Hermitian matrix, ascending.
inline std::vector<double> hermitian_eigenvalues(const CMatrix &a) {
    detail::require_hermitian(a);
    const std::size_t n = a.rows();
    auto e = detail::real_embedding(a);
    detail::jacobi_symmetric(e, 2 * n, nullptr);
    std::vector<double> doubled(2 * n);
    for (std::size_t i = 0; i < 2 * n; ++i) {
        doubled[i] = e[i * 2 * n + i];
    }
    std::sort(doubled.begin(), doubled.end());
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = 0.5 * (doubled[2 * i] + doubled[2 * i + 1]);
    }
    return out;
}

/// f(A) for Hermitian A, applying f to each eigenvalue.
inline CMatrix hermitian_function(const CMatrix &a, const std::function<double(double)> &f) {
    detail::require_hermitian(a);
    const std::size_t n = a.rows();
    const std::size_t m = 2 * n;
    auto e = detail::real_embedding(a);
    std::vector<double> q;
    detail::jacobi_symmetric(e, m, &q);
    std::vector<double> fl(m);
    for (std::size_t k = 0; k < m; ++k) {
        fl[k] = f(e[k * m + k]);
    }
    // The embedding is a *-homomorphism, so f(emb(A)) = emb(f(A)); read back the
    // left column of blocks.
    CMatrix out(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double re = 0;
            double im = 0;
            for (std::size_t k = 0; k < m; ++k) {
                re += q[i * m + k] * fl[k] * q[j * m + k];
                im += q[(i + n) * m + k] * fl[k] * q[j * m + k];
            }
            out(i, j) = cplx(re, im);
        }
    }
    return out;
}

/// W with A = W W^dag for positive semidefinite A, built from the eigenvectors
/// of the real embedding (n x 2n; each eigenpair appears twice, hence the 1/2).
/// Negative eigenvalues are treated as zero.
inline CMatrix psd_factor(const CMatrix &a) {
    detail::require_hermitian(a);
    const std::size_t n = a.rows();
    const std::size_t m = 2 * n;
    auto e = detail::real_embedding(a);
    std::vector<double> q;
    detail::jacobi_symmetric(e, m, &q);
    CMatrix w(n, m);
    for (std::size_t k = 0; k < m; ++k) {
        const double scale = std::sqrt(std::max(0.0, e[k * m + k]) / 2);
        for (std::size_t i = 0; i < n; ++i) {
            w(i, k) = scale * cplx(q[i * m + k], q[(i + n) * m + k]);
        }
    }
    return w;
}

/// Eigenvalues with the PSD noise band [-kPsdTol, 0) clamped to zero.
inline std::vector<double> clamp_psd_noise(std::vector<double> values) {
    for (auto &v : values) {
        if (v < 0 && v >= -kPsdTol) {
            v = 0;
        }
    }
    return values;
}

/// Singular values of T, descending. Uses the eigenvectors v of T^dag T and
/// takes |T v| rather than the square roots of the eigenvalues, which would
/// turn 1e-16 eigenvalue noise into 1e-8 errors for rank-deficient T.
inline std::vector<double> singular_values(const CMatrix &t) {
    const CMatrix s = t.adjoint() * t;
    const std::size_t n = s.rows();
    const std::size_t m = 2 * n;
    auto e = detail::real_embedding(s);
    std::vector<double> q;
    detail::jacobi_symmetric(e, m, &q);
    // Column k of q is (Re v, Im v) for an eigenvector v; each singular value
    // shows up twice.
    std::vector<double> doubled(m);
    for (std::size_t k = 0; k < m; ++k) {
        double norm2 = 0;
        for (std::size_t i = 0; i < t.rows(); ++i) {
            cplx tv = 0;
            for (std::size_t j = 0; j < n; ++j) {
                tv += t(i, j) * cplx(q[j * m + k], q[(j + n) * m + k]);
            }
            norm2 += std::norm(tv);
        }
        doubled[k] = std::sqrt(norm2);
    }
    std::sort(doubled.begin(), doubled.end(), std::greater<>());
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = 0.5 * (doubled[2 * i] + doubled[2 * i + 1]);
    }
    return out;
}

/// Sum of singular values of the (3x3 real) correlation matrix, i.e. the sum
/// of square roots of the eigenvalues of T^dag T.
inline double trace_norm(const CMatrix &t) {
    double sum = 0;
    for (double x : singular_values(t)) {
        sum += x;
    }
    return sum;
}

/// Throws InvalidDensity unless `rho` is Hermitian, unit-trace and PSD within
/// the global tolerances.
inline void require_density(const CMatrix &rho, const char *what = "density matrix") {
    if (!rho.is_square() || rho.rows() == 0) {
        throw Error(ErrorCode::InvalidDensity, std::string(what) + " is not square");
    }
    if (!(hermiticity_defect(rho) <= kHermitianTol)) {
        throw Error(ErrorCode::InvalidDensity, std::string(what) + " is not Hermitian");
    }
    const cplx tr = rho.trace();
    if (!(std::abs(tr - 1.0) <= kTraceTol)) {
        throw Error(ErrorCode::InvalidDensity, std::string(what) + " trace " + std::to_string(tr.real()) + " != 1");
    }
    const auto ev = hermitian_eigenvalues(rho);
    if (ev.front() < -kPsdTol) {
        throw Error(ErrorCode::InvalidDensity,
                    std::string(what) + " has negative eigenvalue " + std::to_string(ev.front()));
    }
}

/// Pure qubit cos(theta/2)|0> + e^{i phi} sin(theta/2)|1>.
struct PureQubit {
    double theta = 0;
    double phi = 0;

    std::array<cplx, 2> amplitudes() const {
        return {cplx(std::cos(theta / 2), 0), std::polar(std::sin(theta / 2), phi)};
    }

    CMatrix projector() const {
        const auto v = amplitudes();
        return CMatrix::outer(v);
    }

    /// The six Bloch-axis states +z, -z, +x, -x, +y, -y.
    static std::array<PureQubit, 6> octahedron() {
        constexpr double pi = std::numbers::pi;
        return {PureQubit{0, 0},           PureQubit{pi, 0},      PureQubit{pi / 2, 0},
                PureQubit{pi / 2, pi},     PureQubit{pi / 2, pi / 2}, PureQubit{pi / 2, 3 * pi / 2}};
    }
};

namespace detail {

/// <psi|rho|psi> for a 2x2 rho, without validation.
inline double expectation(const std::array<cplx, 2> &psi, const CMatrix &rho) {
    cplx acc = 0;
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            acc += std::conj(psi[i]) * rho(i, j) * psi[j];
        }
    }
    return acc.real();
}

inline std::size_t qubit_count_for_dim(std::size_t dim) {
    std::size_t n = 0;
    while ((std::size_t{1} << n) < dim) {
        ++n;
    }
    return (std::size_t{1} << n) == dim ? n : 0;
}

/// Partial trace with no density validation (used on unnormalized operators).
inline CMatrix partial_trace_unchecked(const CMatrix &rho, std::span<const int> traced) {
    const std::size_t n = qubit_count_for_dim(rho.rows());
    if (n == 0 || !rho.is_square()) {
        throw Error(ErrorCode::BadSubsystemSpec, "dimension is not a power of two");
    }
    std::vector<bool> is_traced(n, false);
    for (int q : traced) {
        if (q < 0 || static_cast<std::size_t>(q) >= n || is_traced[q]) {
            throw Error(ErrorCode::BadSubsystemSpec, "qubit index out of range or repeated");
        }
        is_traced[q] = true;
    }
    std::vector<std::size_t> kept_bits;
    std::vector<std::size_t> traced_bits;
    for (std::size_t q = 0; q < n; ++q) {
        (is_traced[q] ? traced_bits : kept_bits).push_back(n - 1 - q);
    }
    if (kept_bits.empty()) {
        throw Error(ErrorCode::BadSubsystemSpec, "cannot trace out every qubit");
    }
    auto scatter = [](std::size_t value, const std::vector<std::size_t> &bits) {
        // bits[0] receives the most significant bit of `value`.
        std::size_t out = 0;
        for (std::size_t k = 0; k < bits.size(); ++k) {
            if ((value >> (bits.size() - 1 - k)) & 1U) {
                out |= std::size_t{1} << bits[k];
            }
        }
        return out;
    };
    const std::size_t kd = std::size_t{1} << kept_bits.size();
    const std::size_t td = std::size_t{1} << traced_bits.size();
    CMatrix out(kd, kd);
    for (std::size_t i = 0; i < kd; ++i) {
        for (std::size_t j = 0; j < kd; ++j) {
            cplx acc = 0;
            for (std::size_t t = 0; t < td; ++t) {
                const std::size_t tb = scatter(t, traced_bits);
                acc += rho(scatter(i, kept_bits) | tb, scatter(j, kept_bits) | tb);
            }
            out(i, j) = acc;
        }
    }
    return out;
}

}  // namespace detail

/// Traces out the listed qubits (0 = first tensor factor) of a 2- or 3-qubit
/// density matrix.
inline CMatrix partial_trace(const CMatrix &rho, std::span<const int> traced) {
    if (!rho.is_square() || (rho.rows() != 4 && rho.rows() != 8)) {
        throw Error(ErrorCode::BadSubsystemSpec, "partial_trace expects a 4x4 or 8x8 matrix");
    }
    require_density(rho);
    return detail::partial_trace_unchecked(rho, traced);
}

inline CMatrix partial_trace(const CMatrix &rho, std::initializer_list<int> traced) {
    return partial_trace(rho, std::span<const int>(traced.begin(), traced.size()));
}

/// <psi|rho|psi> for a one-qubit density matrix, clamped to [0, 1] when within
/// 1e-12 of either end.
inline double pure_fidelity(const PureQubit &psi, const CMatrix &rho) {
    if (rho.rows() != 2 || rho.cols() != 2) {
        throw Error(ErrorCode::InvalidDensity, "expected a 2x2 density matrix");
    }
    require_density(rho);
    double f = detail::expectation(psi.amplitudes(), rho);
    if (f < 0 && f > -1e-12) {
        f = 0;
    }
    if (f > 1 && f < 1 + 1e-12) {
        f = 1;
    }
    return f;
}

}  // namespace xtele

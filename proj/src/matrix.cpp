// Copyright 2026 The qoot Authors
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

#include "qoot/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qoot/error.hpp"

namespace qoot {

namespace {

constexpr int kMaxJacobiSweeps = 100;
constexpr double kJacobiTolerance = 1e-14;

void require_finite(const std::vector<Complex> &data) {
    for (const auto &z : data) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            throw Error(ErrorCode::kNonFinite, "matrix entry is NaN or infinite");
        }
    }
}

void require_same_dim(const ComplexMatrix &a, const ComplexMatrix &b, const char *what) {
    if (a.dim() != b.dim()) {
        throw Error(ErrorCode::kDimensionMismatch, std::string(what) + ": " +
                                                       std::to_string(a.dim()) + " vs " +
                                                       std::to_string(b.dim()));
    }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
    if (dim == 0) {
        throw Error(ErrorCode::kInvalidArgument, "matrix dimension must be positive");
    }
}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<Complex> data)
    : dim_(dim), data_(std::move(data)) {
    if (dim == 0) {
        throw Error(ErrorCode::kInvalidArgument, "matrix dimension must be positive");
    }
    if (data_.size() != dim * dim) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "expected " + std::to_string(dim * dim) + " entries, got " +
                        std::to_string(data_.size()));
    }
    require_finite(data_);
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : dim_(rows.size()) {
    if (dim_ == 0) {
        throw Error(ErrorCode::kInvalidArgument, "matrix dimension must be positive");
    }
    data_.reserve(dim_ * dim_);
    for (const auto &row : rows) {
        if (row.size() != dim_) {
            throw Error(ErrorCode::kDimensionMismatch, "matrix must be square");
        }
        data_.insert(data_.end(), row.begin(), row.end());
    }
    require_finite(data_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> values) {
    ComplexMatrix m(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> ket, std::span<const Complex> bra) {
    if (ket.size() != bra.size()) {
        throw Error(ErrorCode::kDimensionMismatch, "outer product of unequal vectors");
    }
    ComplexMatrix m(ket.size());
    for (std::size_t i = 0; i < ket.size(); ++i) {
        for (std::size_t j = 0; j < bra.size(); ++j) m(i, j) = ket[i] * std::conj(bra[j]);
    }
    return m;
}

ComplexMatrix ComplexMatrix::basis_element(std::size_t dim, std::size_t i, std::size_t j) {
    ComplexMatrix m(dim);
    m(i, j) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) out(j, i) = std::conj((*this)(i, j));
    }
    return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) out(j, i) = (*this)(i, j);
    }
    return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix out(*this);
    for (auto &z : out.data_) z = std::conj(z);
    return out;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto &z : data_) s += std::norm(z);
    return std::sqrt(s);
}

bool ComplexMatrix::all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](const Complex &z) {
        return std::isfinite(z.real()) && std::isfinite(z.imag());
    });
}

ComplexMatrix &ComplexMatrix::operator+=(const ComplexMatrix &other) {
    require_same_dim(*this, other, "matrix sum");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

ComplexMatrix &ComplexMatrix::operator-=(const ComplexMatrix &other) {
    require_same_dim(*this, other, "matrix difference");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

ComplexMatrix &ComplexMatrix::operator*=(Complex scalar) {
    for (auto &z : data_) z *= scalar;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_dim(a, b, "matrix product");
    const std::size_t n = a.dim();
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex(0.0)) continue;
            for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
        }
    }
    return out;
}

ComplexVector ComplexMatrix::apply(std::span<const Complex> v) const {
    if (v.size() != dim_) {
        throw Error(ErrorCode::kDimensionMismatch, "matrix-vector product");
    }
    ComplexVector out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        Complex s = 0.0;
        for (std::size_t j = 0; j < dim_; ++j) s += (*this)(i, j) * v[j];
        out[i] = s;
    }
    return out;
}

double distance(const ComplexMatrix &a, const ComplexMatrix &b) {
    return (a - b).frobenius_norm();
}

double max_entry_distance(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_dim(a, b, "entry distance");
    double m = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) {
        m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    }
    return m;
}

ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b) {
    const std::size_t da = a.dim(), db = b.dim();
    ComplexMatrix out(da * db);
    for (std::size_t i = 0; i < da; ++i) {
        for (std::size_t j = 0; j < da; ++j) {
            const Complex aij = a(i, j);
            for (std::size_t k = 0; k < db; ++k) {
                for (std::size_t l = 0; l < db; ++l) out(i * db + k, j * db + l) = aij * b(k, l);
            }
        }
    }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix &m, std::pair<std::size_t, std::size_t> dims,
                            Subsystem traced) {
    const auto [da, db] = dims;
    if (da == 0 || db == 0 || da * db != m.dim()) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "partial trace: " + std::to_string(da) + "x" + std::to_string(db) +
                        " does not factor dimension " + std::to_string(m.dim()));
    }
    if (traced == Subsystem::kB) {
        ComplexMatrix out(da);
        for (std::size_t i = 0; i < da; ++i) {
            for (std::size_t j = 0; j < da; ++j) {
                Complex s = 0.0;
                for (std::size_t k = 0; k < db; ++k) s += m(i * db + k, j * db + k);
                out(i, j) = s;
            }
        }
        return out;
    }
    ComplexMatrix out(db);
    for (std::size_t k = 0; k < db; ++k) {
        for (std::size_t l = 0; l < db; ++l) {
            Complex s = 0.0;
            for (std::size_t i = 0; i < da; ++i) s += m(i * db + k, i * db + l);
            out(k, l) = s;
        }
    }
    return out;
}

ComplexMatrix swap_factors(const ComplexMatrix &m, std::pair<std::size_t, std::size_t> dims) {
    const auto [d1, d2] = dims;
    if (d1 * d2 != m.dim()) {
        throw Error(ErrorCode::kDimensionMismatch, "swap_factors: dimensions do not factor");
    }
    ComplexMatrix out(m.dim());
    for (std::size_t a = 0; a < d1; ++a) {
        for (std::size_t b = 0; b < d2; ++b) {
            for (std::size_t a2 = 0; a2 < d1; ++a2) {
                for (std::size_t b2 = 0; b2 < d2; ++b2) {
                    out(b * d1 + a, b2 * d1 + a2) = m(a * d2 + b, a2 * d2 + b2);
                }
            }
        }
    }
    return out;
}

ComplexMatrix anticommutator(const ComplexMatrix &a, const ComplexMatrix &b) {
    return a * b + b * a;
}

ComplexMatrix commutator(const ComplexMatrix &a, const ComplexMatrix &b) { return a * b - b * a; }

ComplexVector vectorize(const ComplexMatrix &a) {
    const std::size_t d = a.dim();
    ComplexVector v(d * d);
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t i = 0; i < d; ++i) v[i + j * d] = a(i, j);
    }
    return v;
}

ComplexMatrix unvectorize(std::span<const Complex> v) {
    const auto d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(v.size()))));
    if (d == 0 || d * d != v.size()) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "unvectorize: length " + std::to_string(v.size()) + " is not a perfect square");
    }
    ComplexMatrix a(d);
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t i = 0; i < d; ++i) a(i, j) = v[i + j * d];
    }
    return a;
}

Complex hs_inner(const ComplexMatrix &a, const ComplexMatrix &b) {
    require_same_dim(a, b, "Hilbert-Schmidt inner product");
    Complex s = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) s += std::conj(a.data()[i]) * b.data()[i];
    return s;
}

bool is_hermitian(const ComplexMatrix &a, double rel_tol) {
    const double scale = a.frobenius_norm();
    return distance(a, a.adjoint()) <= rel_tol * std::max(scale, 1e-300);
}

ComplexMatrix EigenDecomposition::projector(std::size_t k) const {
    return ComplexMatrix::outer(vectors[k], vectors[k]);
}

ComplexMatrix EigenDecomposition::transition(std::size_t k, std::size_t l) const {
    return ComplexMatrix::outer(vectors[k], vectors[l]);
}

ComplexMatrix EigenDecomposition::reconstruct() const {
    ComplexMatrix out(values.size());
    for (std::size_t k = 0; k < values.size(); ++k) out += projector(k) * values[k];
    return out;
}

namespace {

double off_diagonal_norm(const ComplexMatrix &a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) {
            if (i != j) s += std::norm(a(i, j));
        }
    }
    return std::sqrt(s);
}

// Applies A <- G^dagger A G and V <- V G for the unitary G that is the
// identity outside rows/cols p, q and [[gpp, gpq], [gqp, gqq]] inside.
void rotate(ComplexMatrix &a, ComplexMatrix &v, std::size_t p, std::size_t q, Complex gpp,
            Complex gpq, Complex gqp, Complex gqq) {
    const std::size_t n = a.dim();
    for (std::size_t i = 0; i < n; ++i) {
        const Complex aip = a(i, p), aiq = a(i, q);
        a(i, p) = aip * gpp + aiq * gqp;
        a(i, q) = aip * gpq + aiq * gqq;
        const Complex vip = v(i, p), viq = v(i, q);
        v(i, p) = vip * gpp + viq * gqp;
        v(i, q) = vip * gpq + viq * gqq;
    }
    for (std::size_t j = 0; j < n; ++j) {
        const Complex apj = a(p, j), aqj = a(q, j);
        a(p, j) = std::conj(gpp) * apj + std::conj(gqp) * aqj;
        a(q, j) = std::conj(gpq) * apj + std::conj(gqq) * aqj;
    }
}

// Phase-fixes v so that its first component with modulus above the
// threshold is real and positive.
void normalize_phase(ComplexVector &v) {
    double largest = 0.0;
    for (const auto &z : v) largest = std::max(largest, std::abs(z));
    for (const auto &z : v) {
        if (std::abs(z) > 1e-8 * largest) {
            const Complex phase = std::conj(z) / std::abs(z);
            for (auto &w : v) w *= phase;
            return;
        }
    }
}

bool lexicographically_less(const ComplexVector &a, const ComplexVector &b) {
    constexpr double kTol = 1e-12;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a[i].real() - b[i].real()) > kTol) return a[i].real() < b[i].real();
        if (std::abs(a[i].imag() - b[i].imag()) > kTol) return a[i].imag() < b[i].imag();
    }
    return false;
}

}  // namespace

EigenDecomposition hermitian_eig(const ComplexMatrix &input) {
    const double scale = input.frobenius_norm();
    if (distance(input, input.adjoint()) > 1e-10 * scale) {
        throw Error(ErrorCode::kNonHermitian, "hermitian_eig requires a Hermitian matrix");
    }
    const std::size_t n = input.dim();
    // Exact symmetrization so rounding in the input cannot leak into the
    // rotations.
    ComplexMatrix a = (input + input.adjoint()) * 0.5;
    ComplexMatrix v = ComplexMatrix::identity(n);

    const double target = kJacobiTolerance * scale;
    int sweep = 0;
    while (off_diagonal_norm(a) > target) {
        if (++sweep > kMaxJacobiSweeps) {
            throw Error(ErrorCode::kNotConverged,
                        "Jacobi eigensolver exceeded " + std::to_string(kMaxJacobiSweeps) +
                            " sweeps");
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) continue;
                const Complex phase = apq / mag;
                const double app = a(p, p).real(), aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * mag);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                // Real rotation [[c, s], [-s, c]] composed with a phase on q
                // that makes a(p, q) real.
                rotate(a, v, p, q, c, s, -s * std::conj(phase), c * std::conj(phase));
                a(p, q) = 0.0;
                a(q, p) = 0.0;
            }
        }
    }

    struct Pair {
        double value;
        ComplexVector vector;
    };
    std::vector<Pair> pairs(n);
    for (std::size_t k = 0; k < n; ++k) {
        pairs[k].value = a(k, k).real();
        pairs[k].vector.resize(n);
        for (std::size_t i = 0; i < n; ++i) pairs[k].vector[i] = v(i, k);
        normalize_phase(pairs[k].vector);
    }
    const double tie = 1e-12 * std::max(scale, 1.0);
    std::sort(pairs.begin(), pairs.end(), [tie](const Pair &x, const Pair &y) {
        if (std::abs(x.value - y.value) > tie) return x.value < y.value;
        return lexicographically_less(x.vector, y.vector);
    });

    EigenDecomposition out;
    for (auto &p : pairs) {
        out.values.push_back(p.value);
        out.vectors.push_back(std::move(p.vector));
    }
    return out;
}

double operator_norm(const ComplexMatrix &a) {
    const auto eig = hermitian_eig(a.adjoint() * a);
    return std::sqrt(std::max(eig.values.back(), 0.0));
}

namespace pauli {
ComplexMatrix I() { return ComplexMatrix::identity(2); }
ComplexMatrix X() { return {{0.0, 1.0}, {1.0, 0.0}}; }
ComplexMatrix Y() { return {{0.0, Complex(0, -1)}, {Complex(0, 1), 0.0}}; }
ComplexMatrix Z() { return {{1.0, 0.0}, {0.0, -1.0}}; }
std::vector<ComplexMatrix> basis() { return {I(), X(), Y(), Z()}; }
}  // namespace pauli

}  // namespace qoot

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

#ifndef QOOT_MATRIX_HPP_
#define QOOT_MATRIX_HPP_

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <utility>
#include <vector>

namespace qoot {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

/// Dense square complex matrix stored row-major.
///
/// This is the carrier for every operator in the library: states,
/// observables, Kraus operators, superoperators and Choi matrices. Entries
/// must be finite; construction from non-finite data throws.
class ComplexMatrix {
   public:
    /// dim x dim zero matrix.
    explicit ComplexMatrix(std::size_t dim = 1);
    /// Row-major data, data.size() must equal dim*dim.
    ComplexMatrix(std::size_t dim, std::vector<Complex> data);
    /// Nested rows, e.g. {{0, 1}, {1, 0}}.
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix zero(std::size_t dim) { return ComplexMatrix(dim); }
    static ComplexMatrix diagonal(std::span<const Complex> values);
    /// |a><b| from two column vectors.
    static ComplexMatrix outer(std::span<const Complex> ket, std::span<const Complex> bra);
    /// |i><j| in the computational basis.
    static ComplexMatrix basis_element(std::size_t dim, std::size_t i, std::size_t j);

    std::size_t dim() const noexcept { return dim_; }
    Complex &operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
    const Complex &operator()(std::size_t row, std::size_t col) const {
        return data_[row * dim_ + col];
    }
    std::span<const Complex> data() const noexcept { return data_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conjugate() const;
    Complex trace() const;
    double frobenius_norm() const;
    bool all_finite() const;

    ComplexMatrix &operator+=(const ComplexMatrix &other);
    ComplexMatrix &operator-=(const ComplexMatrix &other);
    ComplexMatrix &operator*=(Complex scalar);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix &b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix &b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(ComplexMatrix a, double s) { return a *= Complex(s); }
    friend ComplexMatrix operator*(double s, ComplexMatrix a) { return a *= Complex(s); }
    friend ComplexMatrix operator-(ComplexMatrix a) { return a *= Complex(-1.0); }
    friend ComplexMatrix operator*(const ComplexMatrix &a, const ComplexMatrix &b);
    friend bool operator==(const ComplexMatrix &, const ComplexMatrix &) = default;

    /// Matrix-vector product.
    ComplexVector apply(std::span<const Complex> v) const;

   private:
    std::size_t dim_;
    std::vector<Complex> data_;
};

/// ||a - b||_F.
double distance(const ComplexMatrix &a, const ComplexMatrix &b);
/// Largest absolute entry difference.
double max_entry_distance(const ComplexMatrix &a, const ComplexMatrix &b);

/// Kronecker product; (a (x) b)[i*db + k, j*db + l] = a[i,j] * b[k,l].
ComplexMatrix kron(const ComplexMatrix &a, const ComplexMatrix &b);

enum class Subsystem { kA, kB };

/// Partial trace of m on H_A (x) H_B with the given dimensions, tracing out
/// `traced`. Tracing out B returns a dA x dA matrix.
ComplexMatrix partial_trace(const ComplexMatrix &m, std::pair<std::size_t, std::size_t> dims,
                            Subsystem traced);

/// Swaps the tensor factors of m on H_1 (x) H_2 (dims d1, d2); the result
/// lives on H_2 (x) H_1.
ComplexMatrix swap_factors(const ComplexMatrix &m, std::pair<std::size_t, std::size_t> dims);

/// ab + ba.
ComplexMatrix anticommutator(const ComplexMatrix &a, const ComplexMatrix &b);
/// ab - ba.
ComplexMatrix commutator(const ComplexMatrix &a, const ComplexMatrix &b);

// Vectorization stacks columns: vec(A)[i + j*d] = A[i, j]. With this
// convention vec(A X B) = (B^T (x) A) vec(X), so a Kraus operator K acts on
// vectorized operators as conj(K) (x) K. Every superoperator in the library
// uses this convention.
ComplexVector vectorize(const ComplexMatrix &a);
ComplexMatrix unvectorize(std::span<const Complex> v);

/// Tr[a^dagger b].
Complex hs_inner(const ComplexMatrix &a, const ComplexMatrix &b);

bool is_hermitian(const ComplexMatrix &a, double rel_tol = 1e-10);

struct EigenDecomposition {
    /// Ascending.
    std::vector<double> values;
    /// vectors[k] is the unit eigenvector for values[k].
    std::vector<ComplexVector> vectors;

    std::size_t size() const { return values.size(); }
    /// |v_k><v_k|.
    ComplexMatrix projector(std::size_t k) const;
    /// |v_k><v_l|.
    ComplexMatrix transition(std::size_t k, std::size_t l) const;
    /// sum_k values[k] |v_k><v_k|.
    ComplexMatrix reconstruct() const;
};

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations (at most 100 sweeps; converged once the off-diagonal Frobenius
/// mass drops to 1e-14 ||a||_F).
///
/// Eigenvalues come out ascending. Each eigenvector is phase-fixed so its
/// first non-negligible component is real and positive; eigenvectors of
/// (numerically) equal eigenvalues are ordered lexicographically by their
/// components. Throws kNonHermitian when ||a - a^dagger||_F > 1e-10 ||a||_F and
/// kNotConverged if the sweep budget runs out.
EigenDecomposition hermitian_eig(const ComplexMatrix &a);

/// Largest singular value.
double operator_norm(const ComplexMatrix &a);

/// Builds f(A) = sum_k f(lambda_k) |v_k><v_k| for Hermitian a.
template <typename F>
ComplexMatrix hermitian_function(const ComplexMatrix &a, F &&f) {
    auto eig = hermitian_eig(a);
    ComplexMatrix out(a.dim());
    for (std::size_t k = 0; k < eig.size(); ++k) {
        out += eig.projector(k) * Complex(f(eig.values[k]));
    }
    return out;
}

namespace pauli {
ComplexMatrix I();
ComplexMatrix X();
ComplexMatrix Y();
ComplexMatrix Z();
/// {I, X, Y, Z}.
std::vector<ComplexMatrix> basis();
}  // namespace pauli

}  // namespace qoot

#endif  // QOOT_MATRIX_HPP_

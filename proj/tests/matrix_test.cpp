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

#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include "qoot/error.hpp"
#include "test_support.hpp"

namespace qoot {
namespace {

using testing::Random;

ComplexMatrix swap4() {
    ComplexMatrix s(4);
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) s(i * 2 + j, j * 2 + i) = 1.0;
    }
    return s;
}

TEST(ComplexMatrixTest, RejectsNonFiniteEntries) {
    EXPECT_THROW(ComplexMatrix(1, {Complex(std::numeric_limits<double>::quiet_NaN(), 0)}), Error);
    EXPECT_THROW(ComplexMatrix(1, {Complex(0, std::numeric_limits<double>::infinity())}), Error);
}

TEST(ComplexMatrixTest, RejectsWrongDataLength) {
    EXPECT_THROW(ComplexMatrix(2, std::vector<Complex>(3)), Error);
    EXPECT_THROW(ComplexMatrix(0), Error);
}

TEST(ComplexMatrixTest, ProductMatchesEigen) {
    Random rng;
    const auto a = rng.matrix(3), b = rng.matrix(3);
    EXPECT_LE(distance(a * b, testing::from_eigen(testing::to_eigen(a) * testing::to_eigen(b))), 1e-12);
}

TEST(KronTest, IdentityTimesIdentity) {
    EXPECT_EQ(kron(pauli::I(), pauli::I()), ComplexMatrix::identity(4));
}

TEST(KronTest, ZTimesIdentityIsDiagonal) {
    const std::vector<Complex> diag{1.0, 1.0, -1.0, -1.0};
    EXPECT_EQ(kron(pauli::Z(), pauli::I()), ComplexMatrix::diagonal(diag));
}

TEST(KronTest, XTimesXIsAntiDiagonal) {
    ComplexMatrix expected(4);
    for (std::size_t i = 0; i < 4; ++i) expected(i, 3 - i) = 1.0;
    EXPECT_EQ(kron(pauli::X(), pauli::X()), expected);
}

TEST(KronTest, MatchesEigenKroneckerProduct) {
    Random rng;
    for (std::size_t da : {1u, 2u, 3u}) {
        for (std::size_t db : {1u, 2u, 3u}) {
            const auto a = rng.matrix(da), b = rng.matrix(db);
            const Eigen::MatrixXcd ref =
                Eigen::kroneckerProduct(testing::to_eigen(a), testing::to_eigen(b));
            EXPECT_LE(distance(kron(a, b), testing::from_eigen(ref)), 1e-13);
        }
    }
}

TEST(PartialTraceTest, ZTensorIdentityOverB) {
    EXPECT_LE(distance(partial_trace(kron(pauli::Z(), pauli::I()), {2, 2}, Subsystem::kB),
                       pauli::Z() * 2.0),
              1e-15);
}

TEST(PartialTraceTest, SwapGivesIdentity) {
    EXPECT_LE(distance(partial_trace(swap4(), {2, 2}, Subsystem::kB), pauli::I()), 1e-15);
    EXPECT_LE(distance(partial_trace(swap4(), {2, 2}, Subsystem::kA), pauli::I()), 1e-15);
}

TEST(PartialTraceTest, ProductRule) {
    Random rng;
    for (std::size_t da = 1; da <= 4; ++da) {
        for (std::size_t db = 1; db <= 4; ++db) {
            const auto a = rng.matrix(da), b = rng.matrix(db);
            const auto m = kron(a, b);
            EXPECT_LE(distance(partial_trace(m, {da, db}, Subsystem::kB), a * b.trace()), 1e-12);
            EXPECT_LE(distance(partial_trace(m, {da, db}, Subsystem::kA), b * a.trace()), 1e-12);
        }
    }
}

TEST(PartialTraceTest, MatchesProjectionOracle) {
    Random rng;
    for (auto [da, db] : {std::pair<std::size_t, std::size_t>{2, 3}, {3, 2}, {2, 2}, {3, 3}}) {
        const auto m = rng.matrix(da * db);
        EXPECT_LE(distance(partial_trace(m, {da, db}, Subsystem::kB),
                           testing::partial_trace_oracle(m, da, db, true)),
                  1e-12);
        EXPECT_LE(distance(partial_trace(m, {da, db}, Subsystem::kA),
                           testing::partial_trace_oracle(m, da, db, false)),
                  1e-12);
    }
}

TEST(PartialTraceTest, PreservesTrace) {
    Random rng;
    for (int n = 0; n < 20; ++n) {
        const auto m = rng.matrix(6);
        EXPECT_LE(std::abs(partial_trace(m, {2, 3}, Subsystem::kA).trace() - m.trace()), 1e-12);
        EXPECT_LE(std::abs(partial_trace(m, {2, 3}, Subsystem::kB).trace() - m.trace()), 1e-12);
    }
}

TEST(PartialTraceTest, RejectsDimensionMismatch) {
    EXPECT_THROW(partial_trace(ComplexMatrix(5), {2, 2}, Subsystem::kB), Error);
}

TEST(SwapFactorsTest, SwapsProducts) {
    Random rng;
    const auto a = rng.matrix(2), b = rng.matrix(3);
    EXPECT_LE(distance(swap_factors(kron(a, b), {2, 3}), kron(b, a)), 1e-14);
}

TEST(AnticommutatorTest, PauliRelations) {
    EXPECT_EQ(anticommutator(pauli::X(), pauli::Z()), ComplexMatrix(2));
    EXPECT_EQ(anticommutator(pauli::X(), pauli::Y()), ComplexMatrix(2));
    Random rng;
    const auto a = rng.matrix(3);
    EXPECT_LE(distance(anticommutator(ComplexMatrix::identity(3), a), a * 2.0), 1e-15);
}

TEST(VectorizeTest, StacksColumns) {
    const auto v = vectorize(ComplexMatrix::basis_element(2, 0, 1));
    // Entry (0, 1) lands at index 0 + 1 * 2.
    ASSERT_EQ(v.size(), 4u);
    for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(v[i], Complex(i == 2 ? 1.0 : 0.0));
}

TEST(VectorizeTest, RoundTrip) {
    Random rng;
    const auto a = rng.matrix(3);
    EXPECT_EQ(unvectorize(vectorize(a)), a);
}

TEST(VectorizeTest, RejectsNonSquareLength) {
    EXPECT_THROW(unvectorize(ComplexVector(5)), Error);
}

TEST(VectorizeTest, KrausActionConvention) {
    Random rng;
    const auto k = rng.matrix(3), x = rng.matrix(3);
    const auto lhs = vectorize(k * x * k.adjoint());
    const auto rhs = kron(k.conjugate(), k).apply(vectorize(x));
    for (std::size_t i = 0; i < lhs.size(); ++i) EXPECT_LE(std::abs(lhs[i] - rhs[i]), 1e-12);
}

TEST(HermitianEigTest, PauliZ) {
    const auto e = hermitian_eig(pauli::Z());
    EXPECT_EQ(e.values, (std::vector<double>{-1.0, 1.0}));
    EXPECT_LE(std::abs(e.vectors[0][0]), 1e-15);
    EXPECT_LE(std::abs(e.vectors[0][1] - 1.0), 1e-15);
    EXPECT_LE(std::abs(e.vectors[1][0] - 1.0), 1e-15);
}

TEST(HermitianEigTest, PauliX) {
    const auto e = hermitian_eig(pauli::X());
    const double r = 1.0 / std::sqrt(2.0);
    EXPECT_NEAR(e.values[0], -1.0, 1e-14);
    EXPECT_NEAR(e.values[1], 1.0, 1e-14);
    // |->, phase-fixed so the first entry is positive.
    EXPECT_LE(std::abs(e.vectors[0][0] - r) + std::abs(e.vectors[0][1] + r), 1e-14);
    EXPECT_LE(std::abs(e.vectors[1][0] - r) + std::abs(e.vectors[1][1] - r), 1e-14);
}

TEST(HermitianEigTest, ReconstructsAndMatchesEigen) {
    Random rng;
    for (std::size_t d : {2u, 3u, 4u, 8u, 16u}) {
        for (int n = 0; n < 5; ++n) {
            const auto a = rng.hermitian(d);
            const auto e = hermitian_eig(a);
            const double scale = a.frobenius_norm();
            EXPECT_LE(distance(e.reconstruct(), a), 1e-10 * scale);
            for (std::size_t k = 0; k < d; ++k) {
                const auto av = a.apply(e.vectors[k]);
                double res = 0.0;
                for (std::size_t i = 0; i < d; ++i) res += std::norm(av[i] - e.values[k] * e.vectors[k][i]);
                EXPECT_LE(std::sqrt(res), 1e-10 * scale);
                for (std::size_t l = 0; l < d; ++l) {
                    Complex ip = 0.0;
                    for (std::size_t i = 0; i < d; ++i) ip += std::conj(e.vectors[k][i]) * e.vectors[l][i];
                    EXPECT_LE(std::abs(ip - Complex(k == l ? 1.0 : 0.0)), 1e-10);
                }
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ref(testing::to_eigen(a));
            for (std::size_t k = 0; k < d; ++k) {
                EXPECT_NEAR(e.values[k], ref.eigenvalues()(static_cast<Eigen::Index>(k)), 1e-10 * scale);
            }
        }
    }
}

TEST(HermitianEigTest, DeterministicUnderDegeneracy) {
    const auto a = ComplexMatrix::identity(3);
    const auto e1 = hermitian_eig(a), e2 = hermitian_eig(a);
    EXPECT_EQ(e1.vectors, e2.vectors);
    EXPECT_LE(distance(e1.reconstruct(), a), 1e-14);
}

TEST(HermitianEigTest, RejectsNonHermitian) {
    EXPECT_THROW(hermitian_eig(ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}), Error);
}

TEST(OperatorNormTest, KnownValues) {
    EXPECT_NEAR(operator_norm(ComplexMatrix::identity(3)), 1.0, 1e-14);
    EXPECT_NEAR(operator_norm(pauli::X() * (1.0 / std::sqrt(2.0))), 1.0 / std::sqrt(2.0), 1e-14);
}

TEST(OperatorNormTest, MatchesPowerIteration) {
    Random rng;
    for (std::size_t d : {2u, 3u, 5u}) {
        const auto a = rng.matrix(d);
        EXPECT_NEAR(operator_norm(a), testing::power_iteration_norm(a), 1e-9);
    }
}

}  // namespace
}  // namespace qoot

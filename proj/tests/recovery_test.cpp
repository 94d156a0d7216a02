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

#include "qoot/recovery.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "qoot/error.hpp"
#include "qoot/observable_over_time.hpp"
#include "test_support.hpp"

namespace qoot {
namespace {

using testing::Random;

// Largest deviation of a qubit Heisenberg map from sigma_j -> f_j sigma_j.
double pauli_diagonal_deviation(const Channel &heisenberg, const std::array<double, 4> &f) {
    const auto ps = pauli::basis();
    double worst = 0.0;
    for (std::size_t j = 0; j < 4; ++j) {
        worst = std::max(worst, max_entry_distance(heisenberg.apply(ps[j]), ps[j] * f[j]));
    }
    return worst;
}

ErrorCode code_of(const std::function<void()> &fn) {
    try {
        fn();
    } catch (const Error &e) {
        return e.code();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorCode::kInvalidArgument;
}

TEST(PreProcessTest, GadClosedForm) {
    const double eps = 0.36;
    const auto r = pre_process_map(channels::gad(0.7, eps), Observable(pauli::X()));
    const double s = std::sqrt(1.0 - eps);
    EXPECT_LE(pauli_diagonal_deviation(r.heisenberg, {1.0, 1.0 / s, s, 1.0 - eps}), 1e-9);
    EXPECT_LE(r.residual.primary, 1e-9);
    EXPECT_LE(r.residual.swapped, 1e-9);
    ASSERT_TRUE(r.regularization.has_value());
    EXPECT_TRUE(r.map.flags().hp);
    EXPECT_TRUE(r.map.flags().unital);
}

TEST(PreProcessTest, GadClosedFormAcrossParameters) {
    for (double p : {0.0, 0.3, 1.0}) {
        for (double eps : {0.1, 0.5, 0.8}) {
            const auto r = pre_process_map(channels::gad(p, eps), Observable(pauli::X()));
            const double s = std::sqrt(1.0 - eps);
            EXPECT_LE(pauli_diagonal_deviation(r.heisenberg, {1.0, 1.0 / s, s, 1.0 - eps}), 1e-9)
                << "p=" << p << " eps=" << eps;
        }
    }
}

TEST(PreProcessTest, UnitaryChannelGivesInverse) {
    Random rng;
    for (std::size_t d : {2u, 3u}) {
        for (int n = 0; n < 5; ++n) {
            const auto c = channels::unitary(rng.unitary(d));
            const auto r = pre_process_map(c, Observable(rng.hermitian(d)));
            EXPECT_LE(superop_distance(r.map, inverse(c)), 1e-8);
        }
    }
}

TEST(PreProcessTest, RandomUnitalQubitRecovers) {
    Random rng;
    for (int n = 0; n < 10; ++n) {
        const auto c = rng.unital(2);
        const Observable o(pauli::Z() + pauli::X() * 0.3);
        const auto r = pre_process_map(c, o);
        EXPECT_LE(r.residual.primary, 1e-7);
        // Independent evaluation of P^dagger(E^dagger(O)).
        const auto s = testing::superop_of(2, [&](const ComplexMatrix &b) { return r.heisenberg.apply(b); });
        EXPECT_LE(distance(unvectorize(s.apply(vectorize(c.adjoint_apply(o.matrix())))), o.matrix()),
                  1e-7);
    }
}

TEST(PreProcessTest, HeisenbergMapIsTracePreserving) {
    Random rng;
    const auto c = rng.unital(3);
    const auto r = pre_process_map(c, Observable(rng.hermitian(3)));
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
            const auto b = ComplexMatrix::basis_element(3, i, j);
            EXPECT_LE(std::abs(r.heisenberg.apply(b).trace() - b.trace()), 1e-10);
        }
    }
}

TEST(PreProcessTest, RejectsInadmissiblePairs) {
    EXPECT_EQ(code_of([] { pre_process_map(channels::amplitude_damping(0.5), Observable(pauli::Z())); }),
              ErrorCode::kInadmissiblePair);
    EXPECT_EQ(code_of([] {
                  pre_process_map(channels::amplitude_damping(0.5), Observable(pauli::I() + pauli::X()));
              }),
              ErrorCode::kInadmissiblePair);
}

TEST(PreProcessTest, RegularizationNeedsTracePreservation) {
    // Unital but not trace preserving; E^dagger(X) = 0 so every pair is degenerate.
    const auto c = Channel::from_kraus({ComplexMatrix::basis_element(2, 0, 1),
                                        ComplexMatrix::basis_element(2, 1, 1)});
    ASSERT_TRUE(c.flags().unital);
    ASSERT_FALSE(c.flags().tp);
    EXPECT_EQ(code_of([&] { pre_process_map(c, Observable(pauli::X())); }),
              ErrorCode::kRegularizationFailure);
}

TEST(PostProcessTest, StochasticPauliClosedForm) {
    const auto r = post_process_map(channels::stochastic_pauli(0.85, 0.05, 0.04, 0.06),
                                    Observable(pauli::Z()));
    EXPECT_LE(pauli_diagonal_deviation(r.heisenberg, {1.0, 0.80, 0.78, 1.0 / 0.82}), 1e-8);
    EXPECT_LE(r.residual.primary, 1e-9);
    EXPECT_TRUE(r.regularization.has_value());
    EXPECT_TRUE(r.map.flags().hp);
}

TEST(PostProcessTest, DephasingLeavesZAlone) {
    const auto r = post_process_map(channels::dephasing(0.3), Observable(pauli::Z()));
    EXPECT_LE(distance(r.heisenberg.apply(pauli::Z()), pauli::Z()), 1e-9);
}

TEST(PostProcessTest, IdentityChannelGivesIdentity) {
    const auto r = post_process_map(channels::identity(2), Observable(pauli::Z() + pauli::I() * 0.5));
    EXPECT_LE(superop_distance(r.map, channels::identity(2)), 1e-9);
}

TEST(PostProcessTest, HalfWeightPauliChannelIsInfeasible) {
    EXPECT_EQ(code_of([] {
                  post_process_map(channels::stochastic_pauli(0.45, 0.4, 0.1, 0.05), Observable(pauli::Z()));
              }),
              ErrorCode::kInfeasible);
}

TEST(PostProcessTest, UnitaryChannelGivesInverse) {
    Random rng;
    for (std::size_t d : {2u, 3u}) {
        for (int n = 0; n < 5; ++n) {
            const auto c = channels::unitary(rng.unitary(d));
            const auto r = post_process_map(c, Observable(rng.hermitian(d)));
            EXPECT_LE(superop_distance(r.map, inverse(c)), 1e-8);
        }
    }
}

TEST(PostProcessTest, RandomUnitalRecovers) {
    Random rng;
    for (std::size_t d : {2u, 3u}) {
        for (int n = 0; n < 5; ++n) {
            const auto c = rng.unital(d);
            const Observable o(rng.hermitian(d));
            const auto r = post_process_map(c, o);
            EXPECT_LE(distance(c.adjoint_apply(r.heisenberg.apply(o.matrix())), o.matrix()), 1e-7);
        }
    }
}

TEST(PostProcessTest, RejectsInadmissiblePair) {
    EXPECT_EQ(code_of([] { post_process_map(channels::amplitude_damping(0.3), Observable(pauli::Z())); }),
              ErrorCode::kInadmissiblePair);
}

TEST(PostProcessTest, SolversAgreeOnQubits) {
    Random rng;
    for (int n = 0; n < 10; ++n) {
        const auto c = rng.unital(2);
        const Observable o(rng.hermitian(2));
        RecoveryOptions generic, pauli, clock;
        pauli.post_solver = PostSolver::kPauli;
        clock.post_solver = PostSolver::kClockShift;
        const auto a = post_process_map(c, o, generic);
        EXPECT_LE(superop_distance(a.map, post_process_map(c, o, pauli).map), 1e-8);
        EXPECT_LE(superop_distance(a.map, post_process_map(c, o, clock).map), 1e-8);
    }
}

TEST(PostProcessTest, SolversAgreeOnQutrits) {
    Random rng;
    for (int n = 0; n < 5; ++n) {
        const auto c = rng.unital(3);
        const Observable o(rng.hermitian(3));
        RecoveryOptions clock;
        clock.post_solver = PostSolver::kClockShift;
        EXPECT_LE(superop_distance(post_process_map(c, o).map, post_process_map(c, o, clock).map), 1e-8);
    }
}

TEST(PostProcessTest, PauliSolverRejectsQutrits) {
    Random rng;
    RecoveryOptions pauli;
    pauli.post_solver = PostSolver::kPauli;
    EXPECT_EQ(code_of([&] { post_process_map(rng.unital(3), Observable(rng.hermitian(3)), pauli); }),
              ErrorCode::kDimensionMismatch);
}

TEST(QubitPauliSystemTest, StochasticPauliCoefficients) {
    const double p[] = {0.85, 0.05, 0.04, 0.06};
    const auto c = channels::stochastic_pauli(p[0], p[1], p[2], p[3]);
    const Observable o(pauli::Z() + pauli::X() * 0.4);
    const auto &basis = o.eig();
    for (std::size_t k = 0; k < 2; ++k) {
        for (std::size_t l = 0; l < 2; ++l) {
            const auto b = basis.transition(k, l);
            const auto w = pauli_coefficients(b);
            const auto a = pauli_coefficients(c.apply(b) * 0.5);
            EXPECT_LE(std::abs(a[0] - 0.5 * w[0]), 1e-14);
            for (std::size_t j = 1; j < 4; ++j) EXPECT_LE(std::abs(a[j] - (p[0] + p[j] - 0.5) * w[j]), 1e-14);
        }
    }
}

TEST(QubitPauliSystemTest, ShapeAndConsistency) {
    const auto c = channels::stochastic_pauli(0.7, 0.1, 0.1, 0.1);
    const Observable o(pauli::Z() + pauli::I() * 0.25);
    const auto sys = qubit_pauli_system(c, o.eig(), o.eig().values);
    EXPECT_EQ(sys.a.cols(), 8);
    EXPECT_EQ(sys.a.rows(), sys.b.rows());
    const auto sol = solve_post_pauli(c, o.eig(), o.eig().values);
    EXPECT_LE(sol.residual, 1e-10);
}

TEST(QubitPauliSystemTest, RejectsQutrits) {
    Random rng;
    const Observable o(rng.hermitian(3));
    EXPECT_THROW(qubit_pauli_system(rng.unital(3), o.eig(), o.eig().values), Error);
}

TEST(ClockShiftBasisTest, GeneratorRelations) {
    for (std::size_t d : {2u, 3u, 4u}) {
        const ClockShiftBasis b(d);
        ComplexMatrix s = ComplexMatrix::identity(d), c = ComplexMatrix::identity(d);
        for (std::size_t i = 0; i < d; ++i) {
            s = s * b.shift();
            c = c * b.clock();
        }
        EXPECT_LE(distance(s, ComplexMatrix::identity(d)), 1e-12);
        EXPECT_LE(distance(c, ComplexMatrix::identity(d)), 1e-12);
        EXPECT_LE(distance(b.clock() * b.shift(), b.shift() * b.clock() * b.omega_pow(1)), 1e-12);
    }
}

TEST(ClockShiftBasisTest, QubitCaseIsPauli) {
    const ClockShiftBasis b(2);
    EXPECT_LE(distance(b.shift(), pauli::X()), 1e-15);
    EXPECT_LE(distance(b.clock(), pauli::Z()), 1e-15);
    EXPECT_LE(distance(b.element(1, 1), pauli::X() * pauli::Z()), 1e-15);
}

TEST(ClockShiftBasisTest, AnticommutatorIdentity) {
    for (std::size_t d : {2u, 3u, 5u}) {
        const ClockShiftBasis b(d);
        for (std::size_t j = 0; j < d; ++j) {
            for (std::size_t k = 0; k < d; ++k) {
                for (std::size_t l = 0; l < d; ++l) {
                    for (std::size_t m = 0; m < d; ++m) {
                        const auto lhs = anticommutator(b.element(j, k), b.element(l, m));
                        const auto rhs = b.element(j + l, k + m) *
                                         (b.omega_pow(static_cast<long>(k * l)) +
                                          b.omega_pow(static_cast<long>(m * j)));
                        EXPECT_LE(distance(lhs, rhs), 1e-11);
                    }
                }
            }
        }
    }
}

TEST(ClockShiftBasisTest, SpotCheckQutrit) {
    const ClockShiftBasis b(3);
    // sigma_{1,1} = S Z3, sigma_{0,1} = S; by direct products.
    const auto s = b.shift(), z = b.clock();
    const auto lhs = anticommutator(s * z, s);
    const auto rhs = s * z * s + s * s * z;
    EXPECT_LE(distance(lhs, rhs), 1e-14);
    EXPECT_LE(distance(lhs, b.element(1, 2) * (b.omega_pow(0) + b.omega_pow(1))), 1e-12);
}

TEST(ClockShiftBasisTest, CoefficientsRoundTrip) {
    Random rng;
    const ClockShiftBasis b(3);
    const auto m = rng.matrix(3);
    EXPECT_LE(distance(b.from_coefficients(b.coefficients(m)), m), 1e-12);
}

TEST(ClockShiftBasisTest, RejectsDimensionOne) { EXPECT_THROW(ClockShiftBasis(1), Error); }

TEST(RegularizationTest, BlockExtrapolationIsExactForPauliExample) {
    const auto c = channels::stochastic_pauli(0.85, 0.05, 0.04, 0.06);
    RecoveryOptions wide;
    wide.lambdas = {0.1, 0.05};
    const auto r = post_process_map(c, Observable(pauli::Z()), wide);
    EXPECT_LE(pauli_diagonal_deviation(r.heisenberg, {1.0, 0.80, 0.78, 1.0 / 0.82}), 1e-10);
}

TEST(RegularizationTest, SuperopExtrapolationImprovesAsLambdaShrinks) {
    struct Case {
        Channel c;
        Observable o;
        Protocol protocol;
    };
    const std::vector<Case> cases = {
        {channels::stochastic_pauli(0.85, 0.05, 0.04, 0.06), Observable(pauli::Z()), Protocol::kPost},
        {channels::gad(0.7, 0.36), Observable(pauli::X()), Protocol::kPre},
    };
    for (const auto &cs : cases) {
        double previous = 0.0;
        bool first = true;
        for (auto pair : {LambdaPair{1e-3, 5e-4}, LambdaPair{1e-4, 5e-5}}) {
            RecoveryOptions o;
            o.lambdas = pair;
            o.residual_tol = 1e-2;
            o.extrapolation = Extrapolation::kSuperop;
            const auto r = cs.protocol == Protocol::kPre ? pre_process_map(cs.c, cs.o, o)
                                                         : post_process_map(cs.c, cs.o, o);
            if (!first) EXPECT_LE(r.residual.primary, previous + 1e-12);
            previous = r.residual.primary;
            first = false;
        }
    }
}

TEST(RegularizationTest, BlockExtrapolationResidualDoesNotGrow) {
    const auto c = channels::gad(0.7, 0.36);
    double previous = 1.0;
    for (auto pair : {LambdaPair{1e-3, 5e-4}, LambdaPair{1e-4, 5e-5}}) {
        RecoveryOptions o;
        o.lambdas = pair;
        const auto r = pre_process_map(c, Observable(pauli::X()), o);
        EXPECT_LE(r.residual.primary, previous + 1e-12);
        previous = r.residual.primary;
    }
}

TEST(RegularizationTest, RejectsBadLambdaPair) {
    RecoveryOptions o;
    o.lambdas = {1e-3, 1e-3};
    EXPECT_EQ(code_of([&] { pre_process_map(channels::gad(0.7, 0.36), Observable(pauli::X()), o); }),
              ErrorCode::kInvalidArgument);
}

TEST(RegularizationTest, NondegenerateProblemsSkipIt) {
    const auto r = pre_process_map(channels::gad(0.5, 0.3), Observable(pauli::Z() + pauli::I() * 2.0));
    EXPECT_FALSE(r.regularization.has_value());
    EXPECT_LE(r.residual.primary, 1e-10);
}

TEST(VerifyRecoveryTest, UnitaryInverseHasZeroResidual) {
    Random rng;
    const auto u = rng.unitary(2);
    const auto c = channels::unitary(u);
    const Observable o(pauli::Z());
    const auto inv = inverse(c);
    RecoveryMap r{inv, adjoint(inv), Protocol::kPre, {0.0, 0.0}, 0.0, std::nullopt};
    const auto res = verify_recovery(r, c, o);
    EXPECT_LE(res.primary, 1e-13);
    EXPECT_LE(res.swapped, 1e-13);
}

}  // namespace
}  // namespace qoot

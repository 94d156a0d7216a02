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

#include "qoot/qpd.hpp"

#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "qoot/error.hpp"
#include "test_support.hpp"

namespace qoot {
namespace {

using testing::Random;

void expect_valid(const Qpd &q, const Channel &source) {
    EXPECT_LE(reconstruction_error(q, source), 1e-9);
    double sum = 0.0;
    for (const auto &t : q.terms) {
        sum += t.coefficient;
        ComplexMatrix effect(q.dim);
        for (const auto &k : t.kraus) effect += k.adjoint() * k;
        // Trace non-increasing: the largest eigenvalue of sum K^dagger K is at most 1.
        EXPECT_LE(hermitian_eig(effect).values.back(), 1.0 + 1e-10);
    }
    EXPECT_GE(q.gamma() + 1e-15, std::abs(sum));
}

// Term-by-term sum of c_i F_i(rho) evaluated with Eigen.
ComplexMatrix qpd_action_oracle(const Qpd &q, const ComplexMatrix &rho) {
    ComplexMatrix out(rho.dim());
    for (const auto &t : q.terms) out += testing::kraus_oracle(t.kraus, rho) * t.coefficient;
    return out;
}

TEST(DecomposeTest, IdentityIsSingleTerm) {
    for (auto g : {Grouping::kSign, Grouping::kEigenvector}) {
        const auto q = decompose(channels::identity(2), g);
        ASSERT_EQ(q.terms.size(), 1u);
        EXPECT_NEAR(q.terms[0].coefficient, 1.0, 1e-12);
        ASSERT_EQ(q.terms[0].kraus.size(), 1u);
        const auto &k = q.terms[0].kraus[0];
        // Equal to I up to a global phase.
        EXPECT_LE(distance(k * k.adjoint(), pauli::I()), 1e-12);
        EXPECT_NEAR(std::abs(k(0, 0)), 1.0, 1e-12);
        expect_valid(q, channels::identity(2));
    }
}

TEST(DecomposeTest, GadPreMapTermsAndCost) {
    const double eps = 0.36;
    const auto r = pre_process_map(channels::gad(0.7, eps), Observable(pauli::X()));
    const auto q = decompose(r.heisenberg, Grouping::kEigenvector);
    ASSERT_EQ(q.terms.size(), 4u);
    const double root = std::sqrt(1.0 - eps);
    const double ap = 0.5 + 0.5 / root, am = 0.5 - 0.5 / root;
    std::vector<double> expected{(2 - eps) * ap / 2, (2 - eps) * am / 2, eps * ap / 2, eps * am / 2};
    std::vector<double> got;
    for (const auto &t : q.terms) got.push_back(t.coefficient);
    std::sort(expected.begin(), expected.end());
    std::sort(got.begin(), got.end());
    for (std::size_t i = 0; i < 4; ++i) EXPECT_NEAR(got[i], expected[i], 1e-9);
    // Each term is a Pauli conjugation.
    for (const auto &t : q.terms) {
        ASSERT_EQ(t.kraus.size(), 1u);
        const auto &k = t.kraus[0];
        EXPECT_LE(distance(k * k.adjoint(), pauli::I()), 1e-9);
        const auto c = pauli_coefficients(k);
        int nonzero = 0;
        for (const auto &z : c) nonzero += std::abs(z) > 1e-6;
        EXPECT_EQ(nonzero, 1);
    }
    EXPECT_NEAR(q.gamma(), 1.0 / root, 1e-9);
    expect_valid(q, r.heisenberg);
}

TEST(DecomposeTest, StochasticPauliPostMapCost) {
    const auto r = post_process_map(channels::stochastic_pauli(0.85, 0.05, 0.04, 0.06), Observable(pauli::Z()));
    for (auto g : {Grouping::kSign, Grouping::kEigenvector}) {
        const auto q = decompose(r.map, g);
        EXPECT_NEAR(q.gamma(), 1.0 / 0.82, 1e-8);
        expect_valid(q, r.map);
    }
}

TEST(DecomposeTest, CptpMapsCostOne) {
    Random rng;
    for (std::size_t d : {2u, 3u}) {
        for (int n = 0; n < 10; ++n) {
            const auto c = rng.cptp(d, 1 + static_cast<std::size_t>(n % 4));
            const auto q = decompose(c);
            EXPECT_NEAR(q.gamma(), 1.0, 1e-9);
            expect_valid(q, c);
            ComplexMatrix effect(d);
            for (const auto &t : q.terms) {
                for (const auto &k : t.kraus) effect += k.adjoint() * k * t.coefficient;
            }
            EXPECT_LE(distance(effect, ComplexMatrix::identity(d)), 1e-9);
        }
    }
}

TEST(DecomposeTest, SignGroupingNeverCostsMore) {
    Random rng;
    for (int n = 0; n < 10; ++n) {
        const auto c = rng.unital(2);
        const auto r = post_process_map(c, Observable(rng.hermitian(2)));
        const auto s = decompose(r.map, Grouping::kSign);
        const auto e = decompose(r.map, Grouping::kEigenvector);
        EXPECT_LE(s.gamma(), e.gamma() + 1e-12);
        expect_valid(s, r.map);
        expect_valid(e, r.map);
    }
    // Amplitude damping is where eigenvector terms overshoot.
    const auto ad = channels::amplitude_damping(0.3);
    EXPECT_NEAR(decompose(ad, Grouping::kSign).gamma(), 1.0, 1e-12);
    EXPECT_GT(decompose(ad, Grouping::kEigenvector).gamma(), 1.0 + 1e-3);
}

TEST(DecomposeTest, ActionMatchesOracle) {
    Random rng;
    const auto r = pre_process_map(channels::gad(0.3, 0.5), Observable(pauli::X()));
    const auto q = decompose(r.map);
    const auto rho = rng.state(2);
    EXPECT_LE(distance(qpd_action_oracle(q, rho), r.map.apply(rho)), 1e-10);
}

TEST(DecomposeTest, AdjointHasSameCostForPauliExamples) {
    const auto pre = pre_process_map(channels::gad(0.7, 0.36), Observable(pauli::X()));
    EXPECT_NEAR(decompose(pre.map).gamma(), decompose(pre.heisenberg).gamma(), 1e-10);
    const auto post = post_process_map(channels::stochastic_pauli(0.85, 0.05, 0.04, 0.06), Observable(pauli::Z()));
    EXPECT_NEAR(decompose(post.map).gamma(), decompose(post.heisenberg).gamma(), 1e-10);
}

TEST(DecomposeTest, RejectsNonHermitianPreservingMaps) {
    // rho -> i rho is linear but not Hermitian-preserving.
    const auto m = Channel::from_superop(ComplexMatrix::identity(4) * Complex(0.0, 1.0));
    try {
        decompose(m);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::kNonHermitianChoi);
    }
}

TEST(GadInverseGammaTest, ClosedForms) {
    EXPECT_NEAR(gad_inverse_gamma(0.7, 0.36), 1.7875, 1e-12);
    EXPECT_NEAR(gad_inverse_gamma(0.5, 0.0), 1.0, 1e-15);
    EXPECT_NEAR(gad_inverse_gamma(1.0, 0.5), 3.0, 1e-12);
    EXPECT_THROW(gad_inverse_gamma(0.5, 1.0), Error);
}

TEST(GadInverseGammaTest, MatchesDecompositionOfInverse) {
    for (double p : {0.0, 0.3, 0.7, 1.0}) {
        for (double eps : {0.1, 0.5, 0.8}) {
            EXPECT_NEAR(decompose(inverse(channels::gad(p, eps))).gamma(), gad_inverse_gamma(p, eps), 1e-9);
        }
    }
}

TEST(CompareCostsTest, RecoveryBeatsInverseOnGadGrid) {
    for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        for (double eps : {0.2, 0.4, 0.6, 0.8}) {
            const auto c = compare_costs(channels::gad(p, eps), Observable(pauli::X()), Protocol::kPre);
            EXPECT_NEAR(c.gamma_recovery, 1.0 / std::sqrt(1.0 - eps), 1e-9);
            ASSERT_TRUE(c.gamma_inverse.has_value());
            EXPECT_LT(c.gamma_recovery, *c.gamma_inverse);
            EXPECT_EQ(c.winner, CostWinner::kRecovery);
        }
    }
}

TEST(CompareCostsTest, UnitaryIsATie) {
    Random rng;
    const auto c = compare_costs(channels::unitary(rng.unitary(2)), Observable(pauli::Z()), Protocol::kPost);
    EXPECT_NEAR(c.gamma_recovery, 1.0, 1e-9);
    EXPECT_EQ(c.winner, CostWinner::kTie);
}

TEST(CompareCostsTest, SingularChannelReportsRecoveryAlone) {
    const auto c = compare_costs(channels::depolarizing(1.0), Observable(pauli::Z() + pauli::I()), Protocol::kPre);
    EXPECT_FALSE(c.gamma_inverse.has_value());
    EXPECT_FALSE(c.inverse_error.empty());
    EXPECT_EQ(c.winner, CostWinner::kRecovery);
}

}  // namespace
}  // namespace qoot

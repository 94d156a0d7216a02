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

// Quantum observables over time: operators on H_A (x) H_B whose marginals are
// a reference observable O (on A) and its Heisenberg-evolved counterpart
// E^dagger(O) (on B).

#ifndef QOOT_OBSERVABLE_OVER_TIME_HPP_
#define QOOT_OBSERVABLE_OVER_TIME_HPP_

#include <utility>

#include "qoot/channel.hpp"

namespace qoot {

inline constexpr double kAdmissibilityTolerance = 1e-9;

enum class QootKind { kJordan, kUncorrelated };

struct QootOperator {
    ComplexMatrix matrix;
    std::pair<std::size_t, std::size_t> dims;
    QootKind kind;

    /// Tr_B; equals O when the construction is admissible.
    ComplexMatrix marginal_a() const { return partial_trace(matrix, dims, Subsystem::kB); }
    /// Tr_A; equals E^dagger(O).
    ComplexMatrix marginal_b() const { return partial_trace(matrix, dims, Subsystem::kA); }
};

/// Outcome of the trace test: an observable over time exists iff
/// Tr[E^dagger(O)] = Tr[O].
struct NogoResult {
    bool admissible;
    /// Tr[E^dagger(O)] - Tr[O] (real part; the imaginary part vanishes for HP maps).
    double trace_gap;

    explicit operator bool() const { return admissible; }
};

/// Admissible iff |Tr[E^dagger(O)] - Tr[O]| <= tol * max(1, ||O||_F).
NogoResult nogo_check(const Channel &c, const Observable &o,
                      double tol = kAdmissibilityTolerance);

/// True iff ||{O, E(I)} - 2 O||_F <= tol * max(1, ||O||_F), i.e. E(I) - I
/// anticommutes with O. This is what makes Tr_B of the Jordan construction
/// return O.
bool anticommutator_condition(const Channel &c, const Observable &o,
                              double tol = kAdmissibilityTolerance);

/// 1/2 {O (x) I, D[E^dagger]} without any admissibility checks. Linear in O
/// and in the map.
ComplexMatrix jordan_product(const Channel &c, const ComplexMatrix &o);

/// Jordan-product observable over time. Throws kInadmissiblePair naming the
/// failed condition when either the trace test or the anticommutator
/// condition fails.
QootOperator jordan_qoot(const Channel &c, const Observable &o);

/// O (x) E^dagger(O) / Tr[O]. Throws kTracelessReference when |Tr O| <= 1e-12
/// and kInadmissiblePair when the trace test fails.
QootOperator uncorrelated_qoot(const Channel &c, const Observable &o);

/// Time reversal tau: the conjugate-linear map with tau(B (x) A) = A^dagger (x)
/// B^dagger. `dims` are the factor dimensions of the input (H_B, H_A); the
/// output lives on H_A (x) H_B.
ComplexMatrix tau(const ComplexMatrix &m, std::pair<std::size_t, std::size_t> dims);

/// Smallest ||residual|| over all operators M on H_A (x) H_B of the linear
/// system Tr_B M = marginal_a, Tr_A M = marginal_b. Zero iff some operator
/// has both marginals.
double marginal_constraint_residual(const ComplexMatrix &marginal_a,
                                    const ComplexMatrix &marginal_b);

}  // namespace qoot

#endif  // QOOT_OBSERVABLE_OVER_TIME_HPP_

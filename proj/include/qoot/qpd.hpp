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

// Quasi-probability decompositions of Hermitian-preserving maps into
// trace-non-increasing completely positive operations.

#ifndef QOOT_QPD_HPP_
#define QOOT_QPD_HPP_

#include <optional>
#include <string>
#include <vector>

#include "qoot/channel.hpp"
#include "qoot/recovery.hpp"

namespace qoot {

/// Choi eigenvalues with |e| at or below this are dropped.
inline constexpr double kQpdEigenvalueCutoff = 1e-11;

/// One signed term c * F(sigma) with F(sigma) = sum_j K_j sigma K_j^dagger and
/// sum_j K_j^dagger K_j <= I.
struct QpdTerm {
    double coefficient;
    std::vector<ComplexMatrix> kraus;

    ComplexMatrix apply(const ComplexMatrix &rho) const;
};

enum class Grouping {
    /// One term per Choi eigenvector: K = E / ||E||_op, c = e ||E||_op^2.
    kEigenvector,
    /// All eigenvectors of one sign merged into a single operation. Never
    /// costlier than kEigenvector and gives gamma = 1 for every CPTP map.
    kSign,
};

struct Qpd {
    std::size_t dim;
    std::vector<QpdTerm> terms;
    Grouping grouping;

    /// sum_i |c_i|.
    double gamma() const;
    /// p_i = |c_i| / gamma.
    std::vector<double> probabilities() const;
};

/// Decomposes an HP map through the eigendecomposition of its Choi matrix.
/// Throws kNonHermitianChoi when the map is not Hermitian-preserving.
Qpd decompose(const Channel &map, Grouping grouping = Grouping::kSign);

/// sum_i c_i F_i as a superoperator channel.
Channel reconstruct(const Qpd &q);

/// ||superop(reconstruct(q)) - superop(map)||_F.
double reconstruction_error(const Qpd &q, const Channel &map);

/// Closed-form cost (|1 - 2p| eps + 1) / (1 - eps) of inverting GAD(p, eps).
/// Throws kNotInvertible for eps = 1.
double gad_inverse_gamma(double p, double eps);

enum class CostWinner { kRecovery, kInverse, kTie };

struct CostComparison {
    double gamma_recovery;
    /// Empty when the channel has no usable inverse.
    std::optional<double> gamma_inverse;
    /// Why gamma_inverse is empty.
    std::string inverse_error;
    CostWinner winner;
    RecoveryMap recovery;
};

/// Compares the cost of the observable-preserving recovery map with that of
/// the full channel inverse. Costs within 1e-9 count as a tie.
CostComparison compare_costs(const Channel &c, const Observable &o, Protocol protocol,
                             const RecoveryOptions &options = {});

std::string to_string(CostWinner w);

}  // namespace qoot

#endif  // QOOT_QPD_HPP_

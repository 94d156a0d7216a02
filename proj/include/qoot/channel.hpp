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

#ifndef QOOT_CHANNEL_HPP_
#define QOOT_CHANNEL_HPP_

#include <optional>
#include <vector>

#include "qoot/matrix.hpp"

namespace qoot {

/// Structural properties of a linear map, evaluated once at construction.
struct ChannelFlags {
    bool hp = false;
    bool tp = false;
    bool cp = false;
    bool unital = false;
    double tolerance = 0.0;

    bool cptp() const { return cp && tp; }
};

/// Linear map on d x d operators.
///
/// The natural representation (superoperator acting on column-stacked
/// operators) is canonical. Kraus operators are kept when the map was built
/// from them; recovery maps are generally not CP and only carry the
/// superoperator. Instances are immutable.
class Channel {
   public:
    static constexpr double kFlagTolerance = 1e-9;

    /// E(rho) = sum_j K_j rho K_j^dagger.
    static Channel from_kraus(std::vector<ComplexMatrix> kraus);
    /// Superoperator of size d^2 x d^2.
    static Channel from_superop(ComplexMatrix superop);
    /// Inverse of choi(): any Hermitian-preserving map is determined by its
    /// Choi matrix.
    static Channel from_choi(const ComplexMatrix &choi);

    std::size_t dim() const noexcept { return dim_; }
    const ComplexMatrix &superop() const noexcept { return superop_; }
    const std::optional<std::vector<ComplexMatrix>> &kraus() const noexcept { return kraus_; }
    const ChannelFlags &flags() const noexcept { return flags_; }

    /// Schrodinger action E(rho).
    ComplexMatrix apply(const ComplexMatrix &rho) const;
    /// Heisenberg action E^dagger(O), the Hilbert-Schmidt adjoint.
    ComplexMatrix adjoint_apply(const ComplexMatrix &obs) const;

   private:
    Channel(std::size_t dim, ComplexMatrix superop, std::optional<std::vector<ComplexMatrix>> kraus);

    std::size_t dim_;
    ComplexMatrix superop_;
    std::optional<std::vector<ComplexMatrix>> kraus_;
    ChannelFlags flags_;
};

/// Hermitian operator together with its eigendecomposition.
class Observable {
   public:
    explicit Observable(ComplexMatrix matrix);

    const ComplexMatrix &matrix() const noexcept { return matrix_; }
    const EigenDecomposition &eig() const noexcept { return eig_; }
    std::size_t dim() const noexcept { return matrix_.dim(); }

   private:
    ComplexMatrix matrix_;
    EigenDecomposition eig_;
};

/// Jamiolkowski operator D[E] = sum_ij |i><j| (x) E(|j><i|).
ComplexMatrix jamiolkowski(const Channel &c);
/// Choi matrix J[E] = sum_ij E(|i><j|) (x) |i><j|. The output factor comes
/// first, so J's eigenvectors are row-stacked Kraus-like operators.
ComplexMatrix choi(const Channel &c);

bool is_hp(const Channel &c, double tol = Channel::kFlagTolerance);
bool is_tp(const Channel &c, double tol = Channel::kFlagTolerance);
bool is_cp(const Channel &c, double tol = Channel::kFlagTolerance);
bool is_cptp(const Channel &c, double tol = Channel::kFlagTolerance);
bool is_unital(const Channel &c, double tol = Channel::kFlagTolerance);

/// c2 after c1.
Channel compose(const Channel &c2, const Channel &c1);
/// Hilbert-Schmidt adjoint as a map in its own right.
Channel adjoint(const Channel &c);
/// sum_i weights[i] * maps[i], for building general HP maps.
Channel linear_combination(const std::vector<double> &weights, const std::vector<Channel> &maps);

/// Mathematical inverse. Throws kNotInvertible when the superoperator's
/// condition number exceeds 1e12.
Channel inverse(const Channel &c);
double superop_condition_number(const Channel &c);

/// ||S_a - S_b||_F between superoperators.
double superop_distance(const Channel &a, const Channel &b);

/// Kraus operators sqrt(e) * E for the Choi eigenpairs with eigenvalue
/// above 1e-11. Only meaningful for CP maps; negative eigenvalues throw.
std::vector<ComplexMatrix> kraus_from_choi(const ComplexMatrix &choi);

namespace channels {

Channel identity(std::size_t dim);
/// Generalized amplitude damping with excitation parameter p and damping
/// strength eps.
Channel gad(double p, double eps);
Channel amplitude_damping(double eps);
/// p0 rho + p1 X rho X + p2 Y rho Y + p3 Z rho Z.
Channel stochastic_pauli(double p0, double p1, double p2, double p3);
/// (1 - 3 lambda/4) rho + lambda/4 (X rho X + Y rho Y + Z rho Z).
Channel depolarizing(double lambda);
/// (1 - p) rho + p Z rho Z.
Channel dephasing(double p);
Channel unitary(const ComplexMatrix &u);

}  // namespace channels

}  // namespace qoot

#endif  // QOOT_CHANNEL_HPP_

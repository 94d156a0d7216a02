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

// Observable-preserving recovery maps.
//
// Both solvers work in a fixed eigenbasis {|w_k>} with eigenvalues q_k and
// produce "blocks" N_kl = (q_k + q_l) R^dagger(|w_k><w_l|), from which the
// Heisenberg map R^dagger is assembled. When some q_k + q_l vanishes, the
// reference observable is shifted to O + lambda I. The eigenbasis does not
// move under the shift and every block is affine in lambda, so two solves at
// lambda_1, lambda_2 determine the lambda -> 0 limit: N(0) / (q_k + q_l) for
// regular pairs and dN/dlambda / 2 for degenerate ones (which requires
// N(0) = 0).

#ifndef QOOT_RECOVERY_HPP_
#define QOOT_RECOVERY_HPP_

#include <array>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qoot/channel.hpp"

namespace qoot {

enum class Protocol { kPre, kPost };

enum class PostSolver {
    /// Hermitian-parametrized least squares over the operator entries.
    kGeneric,
    /// Pauli-coefficient system; qubits only.
    kPauli,
    /// Clock-and-shift coefficient system; any d >= 2.
    kClockShift,
};

enum class Extrapolation {
    /// Extrapolate the affine blocks N(lambda); exact.
    kBlocks,
    /// Richardson on the assembled superoperators, 2 R(lambda_2) - R(lambda_1);
    /// leaves an O(lambda_1 lambda_2) error. Kept for comparison.
    kSuperop,
};

struct LambdaPair {
    double first = 1e-3;
    double second = 5e-4;
};

struct RecoveryOptions {
    LambdaPair lambdas{};
    /// Maximum accepted recovery residual and least-squares residual.
    double residual_tol = 1e-7;
    /// |q_k + q_l| <= degeneracy_tol * max(1, ||reference||_F) triggers
    /// regularization.
    double degeneracy_tol = 1e-9;
    PostSolver post_solver = PostSolver::kGeneric;
    Extrapolation extrapolation = Extrapolation::kBlocks;
};

struct RecoveryResidual {
    /// Pre: ||P^dagger(E^dagger(O)) - O||_F. Post: ||E^dagger(R^dagger(O)) - O||_F.
    double primary;
    /// The other composition order, for diagnostics.
    double swapped;
};

struct RecoveryMap {
    /// Schrodinger picture (acts on states).
    Channel map;
    /// Heisenberg picture (acts on observables), the adjoint of `map`.
    Channel heisenberg;
    Protocol protocol;
    RecoveryResidual residual;
    /// Least-squares residual of the post-processing system (0 for pre).
    double solver_residual = 0.0;
    /// Set when the reference observable had to be regularized.
    std::optional<LambdaPair> regularization;
};

/// Pre-processing map: P^dagger(|w_k><w_l|) = (q_k + q_l)^{-1} {O, E(|w_k><w_l|)}
/// with (q, w) the eigendecomposition of E^dagger(O).
///
/// Throws kInadmissiblePair when the trace test or the anticommutator
/// condition fails, kRegularizationFailure when a degenerate pair has no
/// finite limit or the result does not recover O.
RecoveryMap pre_process_map(const Channel &c, const Observable &o,
                            const RecoveryOptions &options = {});

/// Post-processing map from the constrained block system
///   X_kl = sum_i {X_ii, A_kl},  A_kl = E(|w_k><w_l|) / 2,
///   X_kl^dagger = X_lk,  Tr[X_kl] = 2 q_k delta_kl,
///   sum_i {X_ii, E(I) - I} = 0,
/// with (q, w) the eigendecomposition of O and X_kl = (q_k + q_l) R^dagger(|w_k><w_l|).
///
/// Throws kInadmissiblePair when the trace test fails, kInfeasible when the
/// least-squares residual exceeds options.residual_tol or the result does not
/// recover O.
RecoveryMap post_process_map(const Channel &c, const Observable &o,
                             const RecoveryOptions &options = {});

RecoveryResidual verify_recovery(const RecoveryMap &r, const Channel &c, const Observable &o);

/// Real linear system a x = b.
struct LinearSystem {
    Eigen::MatrixXd a;
    Eigen::VectorXd b;
};

/// Blocks N_kl, indexed k * d + l, for one value of the eigenvalues q.
struct BlockSolution {
    std::vector<ComplexMatrix> blocks;
    double residual = 0.0;
    long rank = 0;
};

/// Post-processing blocks from the generic solver. `basis` supplies the
/// eigenvectors, `q` the (possibly shifted) eigenvalues.
BlockSolution solve_post_generic(const Channel &c, const EigenDecomposition &basis,
                                 std::span<const double> q);

/// Pauli-coefficient system for qubits. Unknowns are x_j^(ii) for i in
/// {0, 1}, j in {0..3} (real since X_ii is Hermitian), ordered i * 4 + j.
/// Rows: the diagonal-block equations
///   x_0^(kk) = 2 sum_ij x_j^(ii) a_j^(kk),
///   x_j^(kk) = 2 sum_i (x_0^(ii) a_j^(kk) + x_j^(ii) a_0^(kk)),
/// the trace rows x_0^(kl) = q_k delta_kl for all k, l, and the consistency
/// rows. Throws kDimensionMismatch unless d = 2.
LinearSystem qubit_pauli_system(const Channel &c, const EigenDecomposition &basis,
                                std::span<const double> q);
BlockSolution solve_post_pauli(const Channel &c, const EigenDecomposition &basis,
                               std::span<const double> q);

/// Pauli coefficients a_j = Tr[sigma_j A] / 2 of a qubit operator.
std::array<Complex, 4> pauli_coefficients(const ComplexMatrix &a);

/// Weyl-Heisenberg operator basis sigma_{j,k} = S1^k S3^j (j, k mod d) built
/// from the shift S1 (|i> -> |i+1>) and the clock S3 = diag(w^i),
/// w = exp(2 pi i / d). They satisfy
///   {sigma_{j,k}, sigma_{l,m}} = (w^{kl} + w^{mj}) sigma_{j+l, k+m}.
class ClockShiftBasis {
   public:
    explicit ClockShiftBasis(std::size_t d);

    std::size_t dim() const noexcept { return d_; }
    const ComplexMatrix &shift() const noexcept { return shift_; }
    const ComplexMatrix &clock() const noexcept { return clock_; }
    /// sigma_{j,k}; indices are taken mod d.
    const ComplexMatrix &element(std::size_t j, std::size_t k) const;
    /// w^e for integer e, exact up to one exp evaluation.
    Complex omega_pow(long e) const;

    /// Coefficients c[j * d + k] with m = sum c_jk sigma_{j,k}.
    ComplexVector coefficients(const ComplexMatrix &m) const;
    ComplexMatrix from_coefficients(std::span<const Complex> c) const;

   private:
    std::size_t d_;
    ComplexMatrix shift_;
    ComplexMatrix clock_;
    std::vector<ComplexMatrix> elements_;
};

/// Clock-shift coefficient system. Unknowns are the real and imaginary parts
/// of x^(ii)_{st}: column (i * d^2 + s * d + t) holds the real part and the
/// same offset plus d^3 the imaginary part. Rows:
///   x^(kk)_{lm} = sum_i sum_{s+p=l} sum_{t+n=m} x^(ii)_{st} a^(kk)_{pn} (w^{tp} + w^{sn}),
/// Hermiticity x^(ii)_{-s,-t} = conj(x^(ii)_{st}) w^{st}, the trace rows
/// d x^(kl)_{00} = 2 q_k delta_kl, and consistency rows.
LinearSystem clock_shift_system(const Channel &c, const EigenDecomposition &basis,
                                std::span<const double> q);
BlockSolution solve_post_clock_shift(const Channel &c, const EigenDecomposition &basis,
                                     std::span<const double> q);

}  // namespace qoot

#endif  // QOOT_RECOVERY_HPP_

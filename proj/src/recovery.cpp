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

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include "eigen_bridge.hpp"
#include "qoot/error.hpp"
#include "qoot/observable_over_time.hpp"

namespace qoot {

namespace {

using BlockFn = std::function<BlockSolution(double lambda)>;

std::string format(double x) {
    std::ostringstream os;
    os.precision(6);
    os << x;
    return os.str();
}

// Row builder for real systems assembled from complex-valued equations.
class RowSink {
   public:
    explicit RowSink(Eigen::Index cols) : cols_(cols) {}

    void add(const Eigen::RowVectorXd &row, double rhs) {
        rows_.push_back(row);
        rhs_.push_back(rhs);
    }

    LinearSystem finish() const {
        LinearSystem s{Eigen::MatrixXd(static_cast<Eigen::Index>(rows_.size()), cols_),
                       Eigen::VectorXd(static_cast<Eigen::Index>(rows_.size()))};
        for (std::size_t r = 0; r < rows_.size(); ++r) {
            s.a.row(static_cast<Eigen::Index>(r)) = rows_[r];
            s.b(static_cast<Eigen::Index>(r)) = rhs_[r];
        }
        return s;
    }

   private:
    Eigen::Index cols_;
    std::vector<Eigen::RowVectorXd> rows_;
    std::vector<double> rhs_;
};

// A_kl = E(|w_k><w_l|) / 2, indexed k * d + l.
std::vector<ComplexMatrix> half_images(const Channel &c, const EigenDecomposition &basis) {
    const std::size_t d = c.dim();
    std::vector<ComplexMatrix> a;
    a.reserve(d * d);
    for (std::size_t k = 0; k < d; ++k) {
        for (std::size_t l = 0; l < d; ++l) a.push_back(c.apply(basis.transition(k, l)) * 0.5);
    }
    return a;
}

ComplexMatrix unital_defect(const Channel &c) {
    const auto id = ComplexMatrix::identity(c.dim());
    return c.apply(id) - id;
}

void require_basis(const Channel &c, const EigenDecomposition &basis, std::span<const double> q) {
    if (basis.size() != c.dim() || q.size() != c.dim()) {
        throw Error(ErrorCode::kDimensionMismatch, "eigenbasis size must equal channel dimension");
    }
}

// Real basis of d x d Hermitian matrices: E_pp, then for p < q the pairs
// E_pq + E_qp and i E_pq - i E_qp. Coefficients are the diagonal entries and
// the real/imaginary parts of the upper triangle.
std::vector<ComplexMatrix> hermitian_basis(std::size_t d) {
    std::vector<ComplexMatrix> out;
    for (std::size_t p = 0; p < d; ++p) out.push_back(ComplexMatrix::basis_element(d, p, p));
    for (std::size_t p = 0; p < d; ++p) {
        for (std::size_t r = p + 1; r < d; ++r) {
            out.push_back(ComplexMatrix::basis_element(d, p, r) +
                          ComplexMatrix::basis_element(d, r, p));
            out.push_back(ComplexMatrix::basis_element(d, p, r) * Complex(0, 1) -
                          ComplexMatrix::basis_element(d, r, p) * Complex(0, 1));
        }
    }
    return out;
}

// Writes the real and imaginary parts of every entry of m into column `col`
// starting at `row`.
Eigen::Index write_entries(Eigen::MatrixXd &a, Eigen::Index row, Eigen::Index col,
                           const ComplexMatrix &m) {
    for (const auto &z : m.data()) {
        a(row++, col) = z.real();
        a(row++, col) = z.imag();
    }
    return row;
}

ComplexMatrix assemble_heisenberg(const EigenDecomposition &basis,
                                  const std::vector<ComplexMatrix> &images) {
    const std::size_t d = basis.size();
    ComplexMatrix s(d * d);
    for (std::size_t k = 0; k < d; ++k) {
        for (std::size_t l = 0; l < d; ++l) {
            const auto in = vectorize(basis.transition(k, l));
            const auto out = vectorize(images[k * d + l]);
            for (std::size_t r = 0; r < d * d; ++r) {
                for (std::size_t cidx = 0; cidx < d * d; ++cidx) {
                    s(r, cidx) += out[r] * std::conj(in[cidx]);
                }
            }
        }
    }
    return s;
}

struct Assembled {
    ComplexMatrix heisenberg;
    double solver_residual;
    bool regularized;
};

Assembled assemble(const EigenDecomposition &basis, std::span<const double> q, double scale,
                   const BlockFn &blocks_at, const RecoveryOptions &options) {
    const std::size_t d = basis.size();
    const double threshold = options.degeneracy_tol * std::max(1.0, scale);
    std::vector<bool> degenerate(d * d);
    bool any_degenerate = false;
    for (std::size_t k = 0; k < d; ++k) {
        for (std::size_t l = 0; l < d; ++l) {
            degenerate[k * d + l] = std::abs(q[k] + q[l]) <= threshold;
            any_degenerate = any_degenerate || degenerate[k * d + l];
        }
    }

    std::vector<ComplexMatrix> images;
    images.reserve(d * d);
    if (!any_degenerate) {
        const auto sol = blocks_at(0.0);
        for (std::size_t k = 0; k < d; ++k) {
            for (std::size_t l = 0; l < d; ++l) {
                images.push_back(sol.blocks[k * d + l] * (1.0 / (q[k] + q[l])));
            }
        }
        return {assemble_heisenberg(basis, images), sol.residual, false};
    }

    const double l1 = options.lambdas.first, l2 = options.lambdas.second;
    if (!(l1 > 0.0 && l2 > 0.0 && l1 != l2)) {
        throw Error(ErrorCode::kInvalidArgument, "regularization needs two distinct positive lambdas");
    }
    const auto s1 = blocks_at(l1);
    const auto s2 = blocks_at(l2);
    const double residual = std::max(s1.residual, s2.residual);

    if (options.extrapolation == Extrapolation::kSuperop) {
        std::vector<ComplexMatrix> r1, r2;
        for (std::size_t k = 0; k < d; ++k) {
            for (std::size_t l = 0; l < d; ++l) {
                r1.push_back(s1.blocks[k * d + l] * (1.0 / (q[k] + q[l] + 2.0 * l1)));
                r2.push_back(s2.blocks[k * d + l] * (1.0 / (q[k] + q[l] + 2.0 * l2)));
            }
        }
        const auto h1 = assemble_heisenberg(basis, r1);
        const auto h2 = assemble_heisenberg(basis, r2);
        return {(h1 * l2 - h2 * l1) * (1.0 / (l2 - l1)), residual, true};
    }

    double largest = 1.0;
    for (const auto &b : s1.blocks) largest = std::max(largest, b.frobenius_norm());
    for (std::size_t k = 0; k < d; ++k) {
        for (std::size_t l = 0; l < d; ++l) {
            const std::size_t i = k * d + l;
            const auto at_zero = (s1.blocks[i] * l2 - s2.blocks[i] * l1) * (1.0 / (l2 - l1));
            if (!degenerate[i]) {
                images.push_back(at_zero * (1.0 / (q[k] + q[l])));
                continue;
            }
            if (at_zero.frobenius_norm() > 1e-8 * largest) {
                throw Error(ErrorCode::kRegularizationFailure,
                            "degenerate pair (" + std::to_string(k) + ", " + std::to_string(l) +
                                ") has no finite limit: block norm " +
                                format(at_zero.frobenius_norm()) + " at lambda = 0");
            }
            const auto slope = (s1.blocks[i] - s2.blocks[i]) * (1.0 / (l1 - l2));
            images.push_back(slope * 0.5);
        }
    }
    return {assemble_heisenberg(basis, images), residual, true};
}

RecoveryMap finish(Protocol protocol, const Channel &c, const Observable &o, Assembled assembled,
                   const RecoveryOptions &options) {
    auto heisenberg = Channel::from_superop(std::move(assembled.heisenberg));
    auto map = adjoint(heisenberg);
    RecoveryMap r{std::move(map), std::move(heisenberg), protocol, {0.0, 0.0},
                  assembled.solver_residual, std::nullopt};
    if (assembled.regularized) r.regularization = options.lambdas;
    r.residual = verify_recovery(r, c, o);
    return r;
}

BlockSolution blocks_from_diagonal(const std::vector<ComplexMatrix> &diag,
                                   const std::vector<ComplexMatrix> &a) {
    const std::size_t d = diag.size();
    ComplexMatrix sum(d);
    for (const auto &x : diag) sum += x;
    BlockSolution out;
    for (std::size_t k = 0; k < d; ++k) {
        for (std::size_t l = 0; l < d; ++l) {
            out.blocks.push_back(k == l ? diag[k] : anticommutator(sum, a[k * d + l]));
        }
    }
    return out;
}

}  // namespace

RecoveryResidual verify_recovery(const RecoveryMap &r, const Channel &c, const Observable &o) {
    const auto &m = o.matrix();
    const auto &h = r.heisenberg;
    const double pre = distance(h.apply(c.adjoint_apply(m)), m);
    const double post = distance(c.adjoint_apply(h.apply(m)), m);
    if (r.protocol == Protocol::kPre) return {pre, post};
    return {post, pre};
}

RecoveryMap pre_process_map(const Channel &c, const Observable &o,
                            const RecoveryOptions &options) {
    const auto nogo = nogo_check(c, o);
    if (!nogo) {
        throw Error(ErrorCode::kInadmissiblePair, "no-go: trace gap " + format(nogo.trace_gap));
    }
    if (!anticommutator_condition(c, o)) {
        throw Error(ErrorCode::kInadmissiblePair,
                    "anticommutator condition: E(I) - I does not anticommute with O");
    }
    const auto noisy = c.adjoint_apply(o.matrix());
    const auto basis = hermitian_eig((noisy + noisy.adjoint()) * 0.5);
    const std::size_t d = c.dim();

    const BlockFn blocks_at = [&](double lambda) {
        if (lambda != 0.0 && !c.flags().tp) {
            throw Error(ErrorCode::kRegularizationFailure,
                        "shifting O by lambda I keeps the eigenbasis of E^dagger(O) only for "
                        "trace-preserving channels");
        }
        const auto shifted = o.matrix() + ComplexMatrix::identity(d) * lambda;
        BlockSolution sol;
        for (std::size_t k = 0; k < d; ++k) {
            for (std::size_t l = 0; l < d; ++l) {
                sol.blocks.push_back(anticommutator(shifted, c.apply(basis.transition(k, l))));
            }
        }
        return sol;
    };

    auto assembled = assemble(basis, basis.values, noisy.frobenius_norm(), blocks_at, options);
    const bool regularized = assembled.regularized;
    auto r = finish(Protocol::kPre, c, o, std::move(assembled), options);
    if (!(r.residual.primary <= options.residual_tol)) {
        throw Error(regularized ? ErrorCode::kRegularizationFailure : ErrorCode::kInfeasible,
                    "pre-processing map does not recover O (residual " +
                        format(r.residual.primary) + ")");
    }
    return r;
}

RecoveryMap post_process_map(const Channel &c, const Observable &o,
                             const RecoveryOptions &options) {
    const auto nogo = nogo_check(c, o);
    if (!nogo) {
        throw Error(ErrorCode::kInadmissiblePair, "no-go: trace gap " + format(nogo.trace_gap));
    }
    const auto &basis = o.eig();
    const std::size_t d = c.dim();

    const BlockFn blocks_at = [&](double lambda) {
        std::vector<double> q(basis.values);
        for (auto &v : q) v += lambda;
        BlockSolution sol;
        switch (options.post_solver) {
            case PostSolver::kGeneric:
                sol = solve_post_generic(c, basis, q);
                break;
            case PostSolver::kPauli:
                sol = solve_post_pauli(c, basis, q);
                break;
            case PostSolver::kClockShift:
                sol = solve_post_clock_shift(c, basis, q);
                break;
        }
        if (!(sol.residual <= options.residual_tol)) {
            throw Error(ErrorCode::kInfeasible,
                        "post-processing system has no solution (least-squares residual " +
                            format(sol.residual) + ")");
        }
        return sol;
    };
    (void)d;

    auto r = finish(Protocol::kPost, c, o,
                    assemble(basis, basis.values, o.matrix().frobenius_norm(), blocks_at, options),
                    options);
    if (!(r.residual.primary <= options.residual_tol)) {
        throw Error(ErrorCode::kInfeasible, "post-processing map does not recover O (residual " +
                                                format(r.residual.primary) + ")");
    }
    return r;
}

BlockSolution solve_post_generic(const Channel &c, const EigenDecomposition &basis,
                                 std::span<const double> q) {
    require_basis(c, basis, q);
    const std::size_t d = c.dim();
    const auto a = half_images(c, basis);
    const auto defect = unital_defect(c);
    const auto herm = hermitian_basis(d);
    const std::size_t per_block = herm.size();
    const auto cols = static_cast<Eigen::Index>(d * per_block);
    const auto entry_rows = static_cast<Eigen::Index>(2 * d * d);
    // Diagonal-block equations, trace rows for every (k, l), consistency.
    const Eigen::Index rows = static_cast<Eigen::Index>(d) * entry_rows +
                              static_cast<Eigen::Index>(2 * d * d) + entry_rows;

    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows, cols);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(rows);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t p = 0; p < per_block; ++p) {
            const auto col = static_cast<Eigen::Index>(i * per_block + p);
            const auto &h = herm[p];
            Eigen::Index row = 0;
            for (std::size_t k = 0; k < d; ++k) {
                ComplexMatrix eq = anticommutator(h, a[k * d + k]) * -1.0;
                if (k == i) eq += h;
                row = write_entries(m, row, col, eq);
            }
            for (std::size_t k = 0; k < d; ++k) {
                for (std::size_t l = 0; l < d; ++l) {
                    const Complex t = anticommutator(h, a[k * d + l]).trace();
                    m(row++, col) = t.real();
                    m(row++, col) = t.imag();
                }
            }
            write_entries(m, row, col, anticommutator(h, defect));
        }
    }
    Eigen::Index trace_row = static_cast<Eigen::Index>(d) * entry_rows;
    for (std::size_t k = 0; k < d; ++k) rhs(trace_row + 2 * static_cast<Eigen::Index>(k * d + k)) = 2.0 * q[k];

    const auto sol = detail::min_norm_least_squares(m, rhs);
    std::vector<ComplexMatrix> diag;
    for (std::size_t i = 0; i < d; ++i) {
        ComplexMatrix x(d);
        for (std::size_t p = 0; p < per_block; ++p) {
            x += herm[p] * sol.x(static_cast<Eigen::Index>(i * per_block + p));
        }
        diag.push_back(std::move(x));
    }
    auto out = blocks_from_diagonal(diag, a);
    out.residual = sol.residual;
    out.rank = static_cast<long>(sol.rank);
    return out;
}

std::array<Complex, 4> pauli_coefficients(const ComplexMatrix &a) {
    if (a.dim() != 2) {
        throw Error(ErrorCode::kDimensionMismatch, "Pauli expansion needs a qubit operator");
    }
    const auto ps = pauli::basis();
    std::array<Complex, 4> out{};
    for (int j = 0; j < 4; ++j) out[j] = (ps[j] * a).trace() * 0.5;
    return out;
}

LinearSystem qubit_pauli_system(const Channel &c, const EigenDecomposition &basis,
                                std::span<const double> q) {
    if (c.dim() != 2) {
        throw Error(ErrorCode::kDimensionMismatch, "Pauli system is defined for qubits only");
    }
    require_basis(c, basis, q);
    const auto half = half_images(c, basis);
    std::array<std::array<Complex, 4>, 4> a{};
    for (std::size_t i = 0; i < 4; ++i) a[i] = pauli_coefficients(half[i]);
    const auto cdef = pauli_coefficients(unital_defect(c));

    constexpr Eigen::Index kUnknowns = 8;
    RowSink sink(kUnknowns);
    auto push = [&](const Eigen::RowVectorXcd &row, Complex rhs) {
        sink.add(row.real(), rhs.real());
        sink.add(row.imag(), rhs.imag());
    };
    auto index = [](int i, int j) { return static_cast<Eigen::Index>(i * 4 + j); };

    // Coefficient rows of sum_i {X_ii, C} for a qubit operator C with Pauli
    // coefficients cc: component 0 is 2 sum_ij x_j cc_j, component j > 0 is
    // 2 sum_i (x_0 cc_j + x_j cc_0).
    auto anticommutator_rows = [&](const std::array<Complex, 4> &cc) {
        std::array<Eigen::RowVectorXcd, 4> rows;
        for (auto &r : rows) r = Eigen::RowVectorXcd::Zero(kUnknowns);
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 4; ++j) rows[0](index(i, j)) += 2.0 * cc[j];
            for (int j = 1; j < 4; ++j) {
                rows[j](index(i, 0)) += 2.0 * cc[j];
                rows[j](index(i, j)) += 2.0 * cc[0];
            }
        }
        return rows;
    };

    for (int k = 0; k < 2; ++k) {
        auto rows = anticommutator_rows(a[k * 2 + k]);
        for (int j = 0; j < 4; ++j) {
            Eigen::RowVectorXcd row = -rows[j];
            row(index(k, j)) += 1.0;
            push(row, 0.0);
        }
    }
    for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) {
            push(anticommutator_rows(a[k * 2 + l])[0], k == l ? Complex(q[k]) : Complex(0.0));
        }
    }
    for (const auto &row : anticommutator_rows(cdef)) push(row, 0.0);
    return sink.finish();
}

BlockSolution solve_post_pauli(const Channel &c, const EigenDecomposition &basis,
                               std::span<const double> q) {
    const auto system = qubit_pauli_system(c, basis, q);
    const auto sol = detail::min_norm_least_squares(system.a, system.b);
    const auto half = half_images(c, basis);
    const auto ps = pauli::basis();
    std::array<std::array<double, 4>, 2> x{};
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 4; ++j) x[i][j] = sol.x(i * 4 + j);
    }
    BlockSolution out;
    for (int k = 0; k < 2; ++k) {
        for (int l = 0; l < 2; ++l) {
            std::array<Complex, 4> coef{};
            if (k == l) {
                for (int j = 0; j < 4; ++j) coef[j] = x[k][j];
            } else {
                const auto a = pauli_coefficients(half[k * 2 + l]);
                for (int i = 0; i < 2; ++i) {
                    for (int j = 0; j < 4; ++j) coef[0] += 2.0 * x[i][j] * a[j];
                    for (int j = 1; j < 4; ++j) coef[j] += 2.0 * (x[i][0] * a[j] + x[i][j] * a[0]);
                }
            }
            ComplexMatrix block(2);
            for (int j = 0; j < 4; ++j) block += ps[j] * coef[j];
            out.blocks.push_back(std::move(block));
        }
    }
    out.residual = sol.residual;
    out.rank = static_cast<long>(sol.rank);
    return out;
}

ClockShiftBasis::ClockShiftBasis(std::size_t d) : d_(d), shift_(d < 2 ? 1 : d), clock_(d < 2 ? 1 : d) {
    if (d < 2) {
        throw Error(ErrorCode::kInvalidArgument, "clock-shift basis needs d >= 2");
    }
    for (std::size_t i = 0; i < d; ++i) {
        shift_((i + 1) % d, i) = 1.0;
        clock_(i, i) = omega_pow(static_cast<long>(i));
    }
    std::vector<ComplexMatrix> shift_pow{ComplexMatrix::identity(d)};
    std::vector<ComplexMatrix> clock_pow{ComplexMatrix::identity(d)};
    for (std::size_t p = 1; p < d; ++p) {
        shift_pow.push_back(shift_pow.back() * shift_);
        clock_pow.push_back(clock_pow.back() * clock_);
    }
    for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t k = 0; k < d; ++k) elements_.push_back(shift_pow[k] * clock_pow[j]);
    }
}

const ComplexMatrix &ClockShiftBasis::element(std::size_t j, std::size_t k) const {
    return elements_[(j % d_) * d_ + (k % d_)];
}

Complex ClockShiftBasis::omega_pow(long e) const {
    const long d = static_cast<long>(d_);
    const long r = ((e % d) + d) % d;
    if (r == 0) return 1.0;
    return std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(d));
}

ComplexVector ClockShiftBasis::coefficients(const ComplexMatrix &m) const {
    if (m.dim() != d_) {
        throw Error(ErrorCode::kDimensionMismatch, "clock-shift expansion dimension");
    }
    ComplexVector c(d_ * d_);
    for (std::size_t i = 0; i < d_ * d_; ++i) {
        c[i] = hs_inner(elements_[i], m) / static_cast<double>(d_);
    }
    return c;
}

ComplexMatrix ClockShiftBasis::from_coefficients(std::span<const Complex> c) const {
    if (c.size() != d_ * d_) {
        throw Error(ErrorCode::kDimensionMismatch, "clock-shift coefficient count");
    }
    ComplexMatrix m(d_);
    for (std::size_t i = 0; i < c.size(); ++i) m += elements_[i] * c[i];
    return m;
}

namespace {

// Coefficient of y^(ii)_{st} in component (l, m) of sum_i {X_ii, C} where C
// has clock-shift coefficients cc: cc_{pn} (w^{tp} + w^{sn}) with
// p = l - s, n = m - t (mod d).
Complex clock_shift_weight(const ClockShiftBasis &b, const ComplexVector &cc, long s, long t,
                           long l, long m) {
    const long d = static_cast<long>(b.dim());
    const long p = ((l - s) % d + d) % d;
    const long n = ((m - t) % d + d) % d;
    return cc[static_cast<std::size_t>(p * d + n)] * (b.omega_pow(t * p) + b.omega_pow(s * n));
}

}  // namespace

LinearSystem clock_shift_system(const Channel &c, const EigenDecomposition &basis,
                                std::span<const double> q) {
    require_basis(c, basis, q);
    const std::size_t d = c.dim();
    const ClockShiftBasis b(d);
    const auto half = half_images(c, basis);
    std::vector<ComplexVector> a;
    for (const auto &h : half) a.push_back(b.coefficients(h));
    const auto cdef = b.coefficients(unital_defect(c));

    const auto dd = static_cast<long>(d);
    const Eigen::Index complex_unknowns = dd * dd * dd;
    RowSink sink(2 * complex_unknowns);
    auto unknown = [dd](long i, long s, long t) {
        return static_cast<Eigen::Index>(i * dd * dd + ((s % dd + dd) % dd) * dd + ((t % dd + dd) % dd));
    };
    // Splits sum_u coef_u y_u = rhs into real rows over (Re y, Im y).
    auto push = [&](const Eigen::RowVectorXcd &coef, Complex rhs) {
        Eigen::RowVectorXd re(2 * complex_unknowns), im(2 * complex_unknowns);
        re << coef.real(), -coef.imag();
        im << coef.imag(), coef.real();
        sink.add(re, rhs.real());
        sink.add(im, rhs.imag());
    };
    auto anticommutator_row = [&](const ComplexVector &cc, long l, long m) {
        Eigen::RowVectorXcd row = Eigen::RowVectorXcd::Zero(complex_unknowns);
        for (long i = 0; i < dd; ++i) {
            for (long s = 0; s < dd; ++s) {
                for (long t = 0; t < dd; ++t) {
                    row(unknown(i, s, t)) += clock_shift_weight(b, cc, s, t, l, m);
                }
            }
        }
        return row;
    };

    for (long k = 0; k < dd; ++k) {
        for (long l = 0; l < dd; ++l) {
            for (long m = 0; m < dd; ++m) {
                Eigen::RowVectorXcd row = -anticommutator_row(a[static_cast<std::size_t>(k * dd + k)], l, m);
                row(unknown(k, l, m)) += 1.0;
                push(row, 0.0);
            }
        }
    }
    // Hermiticity: y_{-s,-t} - w^{st} conj(y_{st}) = 0. conj is not complex
    // linear, so these rows are written directly in real form.
    for (long i = 0; i < dd; ++i) {
        for (long s = 0; s < dd; ++s) {
            for (long t = 0; t < dd; ++t) {
                const Complex w = b.omega_pow(s * t);
                const Eigen::Index u = unknown(i, s, t), v = unknown(i, -s, -t);
                Eigen::RowVectorXd re = Eigen::RowVectorXd::Zero(2 * complex_unknowns);
                Eigen::RowVectorXd im = Eigen::RowVectorXd::Zero(2 * complex_unknowns);
                re(v) += 1.0;
                re(u) -= w.real();
                re(u + complex_unknowns) -= w.imag();
                im(v + complex_unknowns) += 1.0;
                im(u) -= w.imag();
                im(u + complex_unknowns) += w.real();
                sink.add(re, 0.0);
                sink.add(im, 0.0);
            }
        }
    }
    for (long k = 0; k < dd; ++k) {
        for (long l = 0; l < dd; ++l) {
            const Eigen::RowVectorXcd row =
                anticommutator_row(a[static_cast<std::size_t>(k * dd + l)], 0, 0) * static_cast<double>(dd);
            push(row, k == l ? Complex(2.0 * q[static_cast<std::size_t>(k)]) : Complex(0.0));
        }
    }
    for (long l = 0; l < dd; ++l) {
        for (long m = 0; m < dd; ++m) push(anticommutator_row(cdef, l, m), 0.0);
    }
    return sink.finish();
}

BlockSolution solve_post_clock_shift(const Channel &c, const EigenDecomposition &basis,
                                     std::span<const double> q) {
    const auto system = clock_shift_system(c, basis, q);
    const auto sol = detail::min_norm_least_squares(system.a, system.b);
    const std::size_t d = c.dim();
    const ClockShiftBasis b(d);
    const std::size_t n = d * d * d;
    const auto half = half_images(c, basis);

    std::vector<ComplexVector> y(d, ComplexVector(d * d));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t st = 0; st < d * d; ++st) {
            const auto u = static_cast<Eigen::Index>(i * d * d + st);
            y[i][st] = Complex(sol.x(u), sol.x(u + static_cast<Eigen::Index>(n)));
        }
    }
    BlockSolution out;
    const auto dd = static_cast<long>(d);
    for (std::size_t k = 0; k < d; ++k) {
        for (std::size_t l = 0; l < d; ++l) {
            if (k == l) {
                out.blocks.push_back(b.from_coefficients(y[k]));
                continue;
            }
            const auto a = b.coefficients(half[k * d + l]);
            ComplexVector x(d * d);
            for (long lm = 0; lm < dd * dd; ++lm) {
                for (std::size_t i = 0; i < d; ++i) {
                    for (long s = 0; s < dd; ++s) {
                        for (long t = 0; t < dd; ++t) {
                            x[static_cast<std::size_t>(lm)] +=
                                y[i][static_cast<std::size_t>(s * dd + t)] *
                                clock_shift_weight(b, a, s, t, lm / dd, lm % dd);
                        }
                    }
                }
            }
            out.blocks.push_back(b.from_coefficients(x));
        }
    }
    out.residual = sol.residual;
    out.rank = static_cast<long>(sol.rank);
    return out;
}

}  // namespace qoot

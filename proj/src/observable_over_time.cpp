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

#include "qoot/observable_over_time.hpp"

#include <cmath>
#include <sstream>

#include "eigen_bridge.hpp"
#include "qoot/error.hpp"

namespace qoot {

namespace {

void require_dims(const Channel &c, const Observable &o) {
    if (c.dim() != o.dim()) {
        throw Error(ErrorCode::kDimensionMismatch, "channel and observable dimensions differ");
    }
}

std::string gap_message(double gap) {
    std::ostringstream os;
    os.precision(17);
    os << "no-go: trace gap " << gap;
    return os.str();
}

}  // namespace

NogoResult nogo_check(const Channel &c, const Observable &o, double tol) {
    require_dims(c, o);
    const double gap = (c.adjoint_apply(o.matrix()).trace() - o.matrix().trace()).real();
    const double bound = tol * std::max(1.0, o.matrix().frobenius_norm());
    return {std::abs(gap) <= bound, gap};
}

bool anticommutator_condition(const Channel &c, const Observable &o, double tol) {
    require_dims(c, o);
    const auto &m = o.matrix();
    const auto lhs = anticommutator(m, c.apply(ComplexMatrix::identity(c.dim())));
    return distance(lhs, m * 2.0) <= tol * std::max(1.0, m.frobenius_norm());
}

ComplexMatrix jordan_product(const Channel &c, const ComplexMatrix &o) {
    const std::size_t d = c.dim();
    if (o.dim() != d) {
        throw Error(ErrorCode::kDimensionMismatch, "channel and observable dimensions differ");
    }
    // D[E^dagger] = sum_ij |i><j| (x) E^dagger(|j><i|).
    ComplexMatrix d_adj(d * d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            d_adj += kron(ComplexMatrix::basis_element(d, i, j),
                          c.adjoint_apply(ComplexMatrix::basis_element(d, j, i)));
        }
    }
    return anticommutator(kron(o, ComplexMatrix::identity(d)), d_adj) * 0.5;
}

QootOperator jordan_qoot(const Channel &c, const Observable &o) {
    const auto nogo = nogo_check(c, o);
    if (!nogo) throw Error(ErrorCode::kInadmissiblePair, gap_message(nogo.trace_gap));
    if (!anticommutator_condition(c, o)) {
        throw Error(ErrorCode::kInadmissiblePair,
                    "anticommutator condition: {O, E(I)} != 2 O, so Tr_B would not return O");
    }
    return {jordan_product(c, o.matrix()), {c.dim(), c.dim()}, QootKind::kJordan};
}

QootOperator uncorrelated_qoot(const Channel &c, const Observable &o) {
    require_dims(c, o);
    const Complex tr = o.matrix().trace();
    if (std::abs(tr) <= 1e-12) {
        throw Error(ErrorCode::kTracelessReference,
                    "uncorrelated construction divides by Tr[O] = 0");
    }
    const auto nogo = nogo_check(c, o);
    if (!nogo) throw Error(ErrorCode::kInadmissiblePair, gap_message(nogo.trace_gap));
    return {kron(o.matrix(), c.adjoint_apply(o.matrix())) * (1.0 / tr), {c.dim(), c.dim()},
            QootKind::kUncorrelated};
}

ComplexMatrix tau(const ComplexMatrix &m, std::pair<std::size_t, std::size_t> dims) {
    return swap_factors(m.adjoint(), dims);
}

double marginal_constraint_residual(const ComplexMatrix &marginal_a,
                                    const ComplexMatrix &marginal_b) {
    const std::size_t da = marginal_a.dim(), db = marginal_b.dim();
    const std::size_t n = da * db;
    // Unknown: the n*n entries of M, row-major. One row per marginal entry.
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(da * da + db * db, n * n);
    Eigen::VectorXcd b(da * da + db * db);
    for (std::size_t i = 0; i < da; ++i) {
        for (std::size_t j = 0; j < da; ++j) {
            const std::size_t row = i * da + j;
            for (std::size_t k = 0; k < db; ++k) a(row, (i * db + k) * n + (j * db + k)) = 1.0;
            b(row) = marginal_a(i, j);
        }
    }
    for (std::size_t k = 0; k < db; ++k) {
        for (std::size_t l = 0; l < db; ++l) {
            const std::size_t row = da * da + k * db + l;
            for (std::size_t i = 0; i < da; ++i) a(row, (i * db + k) * n + (i * db + l)) = 1.0;
            b(row) = marginal_b(k, l);
        }
    }
    return detail::min_norm_least_squares(a, b).residual;
}

}  // namespace qoot

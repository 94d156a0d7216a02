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

// Internal glue between ComplexMatrix and Eigen's dense solvers.

#ifndef QOOT_SRC_EIGEN_BRIDGE_HPP_
#define QOOT_SRC_EIGEN_BRIDGE_HPP_

#include <Eigen/Dense>

#include "qoot/matrix.hpp"

namespace qoot::detail {

inline Eigen::MatrixXcd to_eigen(const ComplexMatrix &m) {
    Eigen::MatrixXcd out(m.dim(), m.dim());
    for (std::size_t i = 0; i < m.dim(); ++i) {
        for (std::size_t j = 0; j < m.dim(); ++j) out(i, j) = m(i, j);
    }
    return out;
}

inline ComplexMatrix from_eigen(const Eigen::MatrixXcd &m) {
    ComplexMatrix out(static_cast<std::size_t>(m.rows()));
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) out(i, j) = m(i, j);
    }
    return out;
}

struct LeastSquaresSolution {
    Eigen::VectorXd x;
    double residual = 0.0;
    Eigen::Index rank = 0;
};

/// Minimum-norm least-squares solution of a x = b.
inline LeastSquaresSolution min_norm_least_squares(const Eigen::MatrixXd &a,
                                                   const Eigen::VectorXd &b) {
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(a);
    // Rank decisions relative to the largest pivot; entries are O(1).
    cod.setThreshold(1e-12);
    LeastSquaresSolution out;
    out.x = cod.solve(b);
    out.residual = (a * out.x - b).norm();
    out.rank = cod.rank();
    return out;
}

inline LeastSquaresSolution min_norm_least_squares(const Eigen::MatrixXcd &a,
                                                   const Eigen::VectorXcd &b) {
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(a);
    cod.setThreshold(1e-12);
    Eigen::VectorXcd x = cod.solve(b);
    LeastSquaresSolution out;
    out.x = Eigen::VectorXd(2 * x.size());
    out.x << x.real(), x.imag();
    out.residual = (a * x - b).norm();
    out.rank = cod.rank();
    return out;
}

}  // namespace qoot::detail

#endif  // QOOT_SRC_EIGEN_BRIDGE_HPP_

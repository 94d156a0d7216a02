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

#include "qoot/channel.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "eigen_bridge.hpp"
#include "qoot/error.hpp"

namespace qoot {

namespace {

constexpr double kMaxConditionNumber = 1e12;
constexpr double kChoiRankCutoff = 1e-11;

std::size_t superop_side(std::size_t n) {
    const auto d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
    if (d * d != n) {
        throw Error(ErrorCode::kDimensionMismatch,
                    "superoperator size " + std::to_string(n) + " is not a square dimension");
    }
    return d;
}

ComplexMatrix kraus_superop(const std::vector<ComplexMatrix> &kraus) {
    const std::size_t d = kraus.front().dim();
    ComplexMatrix s(d * d);
    for (const auto &k : kraus) s += qoot::kron(k.conjugate(), k);
    return s;
}

ComplexMatrix superop_action(const ComplexMatrix &s, const ComplexMatrix &x) {
    return unvectorize(s.apply(vectorize(x)));
}

std::vector<ComplexMatrix> nonzero(std::vector<ComplexMatrix> kraus) {
    std::erase_if(kraus, [](const ComplexMatrix &k) { return k.frobenius_norm() == 0.0; });
    return kraus;
}

void require_probability(double p, const char *name) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw Error(ErrorCode::kInvalidArgument,
                    std::string(name) + " must lie in [0, 1], got " + std::to_string(p));
    }
}

}  // namespace

Channel::Channel(std::size_t dim, ComplexMatrix superop,
                 std::optional<std::vector<ComplexMatrix>> kraus)
    : dim_(dim), superop_(std::move(superop)), kraus_(std::move(kraus)) {
    flags_.tolerance = kFlagTolerance;
    flags_.hp = qoot::is_hp(*this, kFlagTolerance);
    flags_.tp = qoot::is_tp(*this, kFlagTolerance);
    flags_.cp = flags_.hp && qoot::is_cp(*this, kFlagTolerance);
    flags_.unital = qoot::is_unital(*this, kFlagTolerance);
}

Channel Channel::from_kraus(std::vector<ComplexMatrix> kraus) {
    if (kraus.empty()) {
        throw Error(ErrorCode::kInvalidArgument, "Kraus set must not be empty");
    }
    const std::size_t d = kraus.front().dim();
    for (const auto &k : kraus) {
        if (k.dim() != d) {
            throw Error(ErrorCode::kDimensionMismatch, "Kraus operators of different dimensions");
        }
    }
    auto s = kraus_superop(kraus);
    return Channel(d, std::move(s), std::move(kraus));
}

Channel Channel::from_superop(ComplexMatrix superop) {
    const std::size_t d = superop_side(superop.dim());
    return Channel(d, std::move(superop), std::nullopt);
}

Channel Channel::from_choi(const ComplexMatrix &j) {
    const std::size_t d = superop_side(j.dim());
    ComplexMatrix s(d * d);
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b < d; ++b) {
            for (std::size_t i = 0; i < d; ++i) {
                for (std::size_t k = 0; k < d; ++k) s(a + b * d, i + k * d) = j(a * d + i, b * d + k);
            }
        }
    }
    return from_superop(std::move(s));
}

ComplexMatrix Channel::apply(const ComplexMatrix &rho) const {
    if (rho.dim() != dim_) {
        throw Error(ErrorCode::kDimensionMismatch, "channel input dimension");
    }
    if (kraus_) {
        ComplexMatrix out(dim_);
        for (const auto &k : *kraus_) out += k * rho * k.adjoint();
        return out;
    }
    return superop_action(superop_, rho);
}

ComplexMatrix Channel::adjoint_apply(const ComplexMatrix &obs) const {
    if (obs.dim() != dim_) {
        throw Error(ErrorCode::kDimensionMismatch, "channel observable dimension");
    }
    if (kraus_) {
        ComplexMatrix out(dim_);
        for (const auto &k : *kraus_) out += k.adjoint() * obs * k;
        return out;
    }
    return superop_action(superop_.adjoint(), obs);
}

Observable::Observable(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
    if (!is_hermitian(matrix_, 1e-10)) {
        throw Error(ErrorCode::kNonHermitian, "observable must be Hermitian");
    }
    eig_ = hermitian_eig(matrix_);
}

ComplexMatrix jamiolkowski(const Channel &c) {
    const std::size_t d = c.dim();
    ComplexMatrix out(d * d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            out += kron(ComplexMatrix::basis_element(d, i, j),
                        c.apply(ComplexMatrix::basis_element(d, j, i)));
        }
    }
    return out;
}

ComplexMatrix choi(const Channel &c) {
    const std::size_t d = c.dim();
    ComplexMatrix out(d * d);
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            const auto eij = ComplexMatrix::basis_element(d, i, j);
            out += kron(c.apply(eij), eij);
        }
    }
    return out;
}

bool is_hp(const Channel &c, double tol) {
    const auto j = choi(c);
    return distance(j, j.adjoint()) <= tol * std::max(1.0, j.frobenius_norm());
}

bool is_tp(const Channel &c, double tol) {
    const auto id = ComplexMatrix::identity(c.dim());
    return distance(c.adjoint_apply(id), id) <= tol;
}

bool is_cp(const Channel &c, double tol) {
    if (!is_hp(c, tol)) return false;
    const auto eig = hermitian_eig(choi(c));
    return eig.values.front() >= -tol;
}

bool is_cptp(const Channel &c, double tol) { return is_tp(c, tol) && is_cp(c, tol); }

bool is_unital(const Channel &c, double tol) {
    const auto id = ComplexMatrix::identity(c.dim());
    return distance(c.apply(id), id) <= tol;
}

Channel compose(const Channel &c2, const Channel &c1) {
    if (c1.dim() != c2.dim()) {
        throw Error(ErrorCode::kDimensionMismatch, "compose: channel dimensions differ");
    }
    if (c1.kraus() && c2.kraus()) {
        std::vector<ComplexMatrix> ks;
        for (const auto &b : *c2.kraus()) {
            for (const auto &a : *c1.kraus()) ks.push_back(b * a);
        }
        ks = nonzero(std::move(ks));
        if (!ks.empty()) return Channel::from_kraus(std::move(ks));
    }
    return Channel::from_superop(c2.superop() * c1.superop());
}

Channel adjoint(const Channel &c) {
    if (c.kraus()) {
        std::vector<ComplexMatrix> ks;
        for (const auto &k : *c.kraus()) ks.push_back(k.adjoint());
        return Channel::from_kraus(std::move(ks));
    }
    return Channel::from_superop(c.superop().adjoint());
}

Channel linear_combination(const std::vector<double> &weights, const std::vector<Channel> &maps) {
    if (weights.size() != maps.size() || maps.empty()) {
        throw Error(ErrorCode::kInvalidArgument, "linear_combination: weights and maps must match");
    }
    ComplexMatrix s(maps.front().superop().dim());
    for (std::size_t i = 0; i < maps.size(); ++i) s += maps[i].superop() * weights[i];
    return Channel::from_superop(std::move(s));
}

double superop_condition_number(const Channel &c) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(detail::to_eigen(c.superop()));
    const auto &sv = svd.singularValues();
    const double smin = sv(sv.size() - 1);
    if (smin == 0.0) return std::numeric_limits<double>::infinity();
    return sv(0) / smin;
}

Channel inverse(const Channel &c) {
    const double cond = superop_condition_number(c);
    if (!(cond <= kMaxConditionNumber)) {
        throw Error(ErrorCode::kNotInvertible,
                    "superoperator condition number " + std::to_string(cond) + " exceeds 1e12");
    }
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(detail::to_eigen(c.superop()));
    if (!lu.isInvertible()) {
        throw Error(ErrorCode::kNotInvertible, "superoperator is singular");
    }
    return Channel::from_superop(detail::from_eigen(lu.inverse()));
}

double superop_distance(const Channel &a, const Channel &b) {
    return distance(a.superop(), b.superop());
}

std::vector<ComplexMatrix> kraus_from_choi(const ComplexMatrix &j) {
    const auto eig = hermitian_eig(j);
    std::vector<ComplexMatrix> out;
    for (std::size_t k = 0; k < eig.size(); ++k) {
        const double e = eig.values[k];
        if (std::abs(e) <= kChoiRankCutoff) continue;
        if (e < 0) {
            throw Error(ErrorCode::kInvalidArgument,
                        "map is not completely positive (Choi eigenvalue " + std::to_string(e) +
                            ")");
        }
        // Row-stacked: the output index is the major one in choi().
        out.push_back(unvectorize(eig.vectors[k]).transpose() * std::sqrt(e));
    }
    return out;
}

namespace channels {

Channel identity(std::size_t dim) { return Channel::from_kraus({ComplexMatrix::identity(dim)}); }

Channel gad(double p, double eps) {
    require_probability(p, "p");
    require_probability(eps, "eps");
    const double q = 1.0 - p;
    std::vector<ComplexMatrix> ks = {
        {{std::sqrt(p), 0.0}, {0.0, std::sqrt(p * (1.0 - eps))}},
        {{0.0, std::sqrt(p * eps)}, {0.0, 0.0}},
        {{std::sqrt(q * (1.0 - eps)), 0.0}, {0.0, std::sqrt(q)}},
        {{0.0, 0.0}, {std::sqrt(eps * q), 0.0}},
    };
    return Channel::from_kraus(nonzero(std::move(ks)));
}

Channel amplitude_damping(double eps) { return gad(1.0, eps); }

Channel stochastic_pauli(double p0, double p1, double p2, double p3) {
    require_probability(p0, "p0");
    require_probability(p1, "p1");
    require_probability(p2, "p2");
    require_probability(p3, "p3");
    if (std::abs(p0 + p1 + p2 + p3 - 1.0) > 1e-12) {
        throw Error(ErrorCode::kInvalidArgument, "Pauli probabilities must sum to 1");
    }
    const double ps[] = {p0, p1, p2, p3};
    const auto paulis = pauli::basis();
    std::vector<ComplexMatrix> ks;
    for (int i = 0; i < 4; ++i) ks.push_back(paulis[i] * std::sqrt(ps[i]));
    return Channel::from_kraus(nonzero(std::move(ks)));
}

Channel depolarizing(double lambda) {
    if (!(lambda >= 0.0 && lambda <= 4.0 / 3.0)) {
        throw Error(ErrorCode::kInvalidArgument, "depolarizing lambda must lie in [0, 4/3]");
    }
    const double p = lambda / 4.0;
    return stochastic_pauli(1.0 - 3.0 * p, p, p, p);
}

Channel dephasing(double p) { return stochastic_pauli(1.0 - p, 0.0, 0.0, p); }

Channel unitary(const ComplexMatrix &u) {
    const auto id = ComplexMatrix::identity(u.dim());
    if (distance(u.adjoint() * u, id) > 1e-10) {
        throw Error(ErrorCode::kInvalidArgument, "matrix is not unitary");
    }
    return Channel::from_kraus({u});
}

}  // namespace channels

}  // namespace qoot

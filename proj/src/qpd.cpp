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

#include <cmath>
#include <string>

#include "qoot/error.hpp"

namespace qoot {

namespace {

constexpr double kTieTolerance = 1e-9;

struct ChoiTerm {
    double eigenvalue;
    ComplexMatrix e;  // unit Frobenius norm
};

std::vector<ChoiTerm> choi_terms(const Channel &map) {
    const auto j = choi(map);
    if (distance(j, j.adjoint()) > Channel::kFlagTolerance * std::max(1.0, j.frobenius_norm())) {
        throw Error(ErrorCode::kNonHermitianChoi,
                    "Choi matrix is not Hermitian; the map does not preserve Hermiticity");
    }
    const auto eig = hermitian_eig((j + j.adjoint()) * 0.5);
    std::vector<ChoiTerm> out;
    for (std::size_t k = 0; k < eig.size(); ++k) {
        if (std::abs(eig.values[k]) <= kQpdEigenvalueCutoff) continue;
        // The output index is the major one in choi(), so the vector is row-stacked.
        out.push_back({eig.values[k], unvectorize(eig.vectors[k]).transpose()});
    }
    return out;
}

// Merges same-sign terms sum_j e_j E_j . E_j^dagger into c F with
// c = sign * ||sum_j |e_j| E_j^dagger E_j||_op.
std::optional<QpdTerm> merge(const std::vector<ChoiTerm> &terms, double sign) {
    std::vector<const ChoiTerm *> picked;
    for (const auto &t : terms) {
        if (t.eigenvalue * sign > 0) picked.push_back(&t);
    }
    if (picked.empty()) return std::nullopt;
    const std::size_t d = picked.front()->e.dim();
    ComplexMatrix effect(d);
    for (const auto *t : picked) effect += t->e.adjoint() * t->e * std::abs(t->eigenvalue);
    const double scale = operator_norm(effect);
    QpdTerm out{sign * scale, {}};
    for (const auto *t : picked) {
        out.kraus.push_back(t->e * std::sqrt(std::abs(t->eigenvalue) / scale));
    }
    return out;
}

}  // namespace

ComplexMatrix QpdTerm::apply(const ComplexMatrix &rho) const {
    ComplexMatrix out(rho.dim());
    for (const auto &k : kraus) out += k * rho * k.adjoint();
    return out;
}

double Qpd::gamma() const {
    double g = 0.0;
    for (const auto &t : terms) g += std::abs(t.coefficient);
    return g;
}

std::vector<double> Qpd::probabilities() const {
    const double g = gamma();
    std::vector<double> p;
    p.reserve(terms.size());
    for (const auto &t : terms) p.push_back(std::abs(t.coefficient) / g);
    return p;
}

Qpd decompose(const Channel &map, Grouping grouping) {
    const auto terms = choi_terms(map);
    Qpd out{map.dim(), {}, grouping};
    if (grouping == Grouping::kSign) {
        for (double sign : {1.0, -1.0}) {
            if (auto t = merge(terms, sign)) out.terms.push_back(std::move(*t));
        }
        return out;
    }
    for (const auto &t : terms) {
        const double norm = operator_norm(t.e);
        out.terms.push_back({t.eigenvalue * norm * norm, {t.e * (1.0 / norm)}});
    }
    return out;
}

Channel reconstruct(const Qpd &q) {
    ComplexMatrix s(q.dim * q.dim);
    for (const auto &t : q.terms) {
        for (const auto &k : t.kraus) s += kron(k.conjugate(), k) * t.coefficient;
    }
    return Channel::from_superop(std::move(s));
}

double reconstruction_error(const Qpd &q, const Channel &map) {
    return superop_distance(reconstruct(q), map);
}

double gad_inverse_gamma(double p, double eps) {
    if (!(eps < 1.0)) {
        throw Error(ErrorCode::kNotInvertible, "GAD with eps = 1 has no inverse");
    }
    return (std::abs(1.0 - 2.0 * p) * eps + 1.0) / (1.0 - eps);
}

CostComparison compare_costs(const Channel &c, const Observable &o, Protocol protocol,
                             const RecoveryOptions &options) {
    auto recovery = protocol == Protocol::kPre ? pre_process_map(c, o, options)
                                               : post_process_map(c, o, options);
    CostComparison out{decompose(recovery.map).gamma(), std::nullopt, {}, CostWinner::kRecovery,
                       std::move(recovery)};
    try {
        out.gamma_inverse = decompose(inverse(c)).gamma();
    } catch (const Error &e) {
        if (e.code() != ErrorCode::kNotInvertible) throw;
        out.inverse_error = e.what();
        return out;
    }
    const double diff = out.gamma_recovery - *out.gamma_inverse;
    if (std::abs(diff) <= kTieTolerance) {
        out.winner = CostWinner::kTie;
    } else if (diff > 0) {
        out.winner = CostWinner::kInverse;
    }
    return out;
}

std::string to_string(CostWinner w) {
    switch (w) {
        case CostWinner::kRecovery:
            return "recovery";
        case CostWinner::kInverse:
            return "inverse";
        case CostWinner::kTie:
            return "tie";
    }
    return "unknown";
}

}  // namespace qoot

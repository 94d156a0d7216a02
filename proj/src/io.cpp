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

#include "qoot/io.hpp"

#include <cmath>
#include <fstream>

#include "qoot/error.hpp"

namespace qoot::io {

namespace {

[[noreturn]] void bad(const std::string &what) { throw Error(ErrorCode::kInvalidArgument, what); }

double number(const Json &j, const char *key) {
    if (!j.contains(key) || !j.at(key).is_number()) {
        bad(std::string("expected numeric field \"") + key + "\"");
    }
    return j.at(key).get<double>();
}

ComplexMatrix pauli_letter(char c) {
    switch (c) {
        case 'I':
            return pauli::I();
        case 'X':
            return pauli::X();
        case 'Y':
            return pauli::Y();
        case 'Z':
            return pauli::Z();
        default:
            bad(std::string("unknown Pauli letter '") + c + "'");
    }
}

Channel from_builder(const Json &j) {
    const auto name = j.at("builder").get<std::string>();
    const Json params = j.value("params", Json::object());
    if (name == "identity") return channels::identity(params.value("dim", std::size_t{2}));
    if (name == "gad") return channels::gad(number(params, "p"), number(params, "eps"));
    if (name == "amplitude_damping") return channels::amplitude_damping(number(params, "eps"));
    if (name == "stochastic_pauli") {
        return channels::stochastic_pauli(number(params, "p0"), number(params, "p1"),
                                          number(params, "p2"), number(params, "p3"));
    }
    if (name == "depolarizing") return channels::depolarizing(number(params, "lambda"));
    if (name == "dephasing") return channels::dephasing(number(params, "p"));
    if (name == "unitary") return channels::unitary(matrix_from_json(params.at("matrix")));
    bad("unknown channel builder \"" + name + "\"");
}

}  // namespace

Json read_json(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) bad("cannot open " + path.string());
    try {
        return Json::parse(in);
    } catch (const Json::parse_error &e) {
        bad(path.string() + ": " + e.what());
    }
}

Json to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Json to_json(const ComplexMatrix &m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.dim(); ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < m.dim(); ++k) row.push_back(to_json(m(i, k)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Complex complex_from_json(const Json &j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    bad("complex number must be [re, im] or a real number, got " + j.dump());
}

ComplexMatrix matrix_from_json(const Json &j) {
    if (!j.is_array() || j.empty()) bad("matrix must be a non-empty array of rows");
    const std::size_t d = j.size();
    std::vector<Complex> data;
    data.reserve(d * d);
    for (const auto &row : j) {
        if (!row.is_array() || row.size() != d) bad("matrix must be square");
        for (const auto &z : row) data.push_back(complex_from_json(z));
    }
    for (const auto &z : data) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) bad("matrix entries must be finite");
    }
    return ComplexMatrix(d, std::move(data));
}

Json channel_to_json(const Channel &c) {
    Json out;
    out["dim"] = c.dim();
    out["superop"] = to_json(c.superop());
    if (c.kraus()) {
        Json ks = Json::array();
        for (const auto &k : *c.kraus()) ks.push_back(to_json(k));
        out["kraus"] = std::move(ks);
    }
    return out;
}

Channel channel_from_json(const Json &j) {
    if (!j.is_object()) bad("channel spec must be an object");
    if (j.contains("result") && j["result"].contains("map")) return channel_from_json(j["result"]["map"]);
    if (j.contains("builder")) return from_builder(j);
    if (j.contains("kraus")) {
        std::vector<ComplexMatrix> ks;
        for (const auto &k : j.at("kraus")) ks.push_back(matrix_from_json(k));
        auto c = Channel::from_kraus(std::move(ks));
        if (j.contains("dim") && j["dim"].get<std::size_t>() != c.dim()) {
            bad("\"dim\" does not match the Kraus operators");
        }
        return c;
    }
    if (j.contains("superop")) return Channel::from_superop(matrix_from_json(j.at("superop")));
    bad("channel spec needs one of \"kraus\", \"superop\" or \"builder\"");
}

Observable observable_from_json(const Json &j) {
    if (!j.is_object()) bad("observable spec must be an object");
    if (j.contains("matrix")) return Observable(matrix_from_json(j.at("matrix")));
    if (j.contains("pauli")) {
        const auto s = j.at("pauli").get<std::string>();
        if (s.empty()) bad("empty Pauli string");
        ComplexMatrix m = pauli_letter(s[0]);
        for (std::size_t i = 1; i < s.size(); ++i) m = kron(m, pauli_letter(s[i]));
        return Observable(std::move(m));
    }
    bad("observable spec needs \"matrix\" or \"pauli\"");
}

ComplexMatrix state_from_json(const Json &j) {
    if (!j.is_object()) bad("state spec must be an object");
    if (j.contains("matrix")) return matrix_from_json(j.at("matrix"));
    if (j.contains("ket")) {
        ComplexVector v;
        for (const auto &z : j.at("ket")) v.push_back(complex_from_json(z));
        double norm = 0.0;
        for (const auto &z : v) norm += std::norm(z);
        if (v.empty() || norm == 0.0) bad("ket must be a non-zero vector");
        for (auto &z : v) z /= std::sqrt(norm);
        return ComplexMatrix::outer(v, v);
    }
    if (j.contains("label")) {
        const auto label = j.at("label").get<std::string>();
        const double r = 1.0 / std::sqrt(2.0);
        ComplexVector v;
        if (label == "0") v = {1.0, 0.0};
        else if (label == "1") v = {0.0, 1.0};
        else if (label == "+") v = {r, r};
        else if (label == "-") v = {r, -r};
        else if (label == "+i") v = {r, Complex(0, r)};
        else if (label == "-i") v = {r, Complex(0, -r)};
        else bad("unknown state label \"" + label + "\"");
        return ComplexMatrix::outer(v, v);
    }
    bad("state spec needs \"matrix\", \"ket\" or \"label\"");
}

Json qpd_to_json(const Qpd &q) {
    Json terms = Json::array();
    for (const auto &t : q.terms) {
        Json ks = Json::array();
        for (const auto &k : t.kraus) ks.push_back(to_json(k));
        terms.push_back({{"coefficient", t.coefficient}, {"kraus", std::move(ks)}});
    }
    return {{"dim", q.dim},
            {"grouping", q.grouping == Grouping::kSign ? "sign" : "eigenvector"},
            {"terms", std::move(terms)},
            {"gamma", q.gamma()}};
}

Json recovery_to_json(const RecoveryMap &r) {
    Json reg = nullptr;
    if (r.regularization) {
        reg = {{"lambda1", r.regularization->first}, {"lambda2", r.regularization->second}};
    }
    return {{"protocol", to_string(r.protocol)},
            {"map", channel_to_json(r.map)},
            {"heisenberg", channel_to_json(r.heisenberg)},
            {"residual", {{"primary", r.residual.primary}, {"swapped", r.residual.swapped}}},
            {"solver_residual", r.solver_residual},
            {"regularization", std::move(reg)},
            {"flags",
             {{"hp", r.map.flags().hp},
              {"tp", r.map.flags().tp},
              {"cp", r.map.flags().cp},
              {"unital", r.map.flags().unital}}}};
}

Protocol protocol_from_string(const std::string &s) {
    if (s == "pre") return Protocol::kPre;
    if (s == "post") return Protocol::kPost;
    bad("protocol must be \"pre\" or \"post\", got \"" + s + "\"");
}

std::string to_string(Protocol p) { return p == Protocol::kPre ? "pre" : "post"; }

PostSolver post_solver_from_string(const std::string &s) {
    if (s == "generic") return PostSolver::kGeneric;
    if (s == "pauli") return PostSolver::kPauli;
    if (s == "clock-shift") return PostSolver::kClockShift;
    bad("solver must be generic, pauli or clock-shift");
}

Extrapolation extrapolation_from_string(const std::string &s) {
    if (s == "blocks") return Extrapolation::kBlocks;
    if (s == "superop") return Extrapolation::kSuperop;
    bad("extrapolation must be blocks or superop");
}

EstimatorMode mode_from_string(const std::string &s) {
    if (s == "expectation") return EstimatorMode::kExpectation;
    if (s == "shot") return EstimatorMode::kShot;
    bad("mode must be expectation or shot");
}

PlanSpec plan_spec_from_json(const Json &j) {
    if (!j.is_object()) bad("plan must be an object");
    for (const char *key : {"protocol", "channel", "observable", "state"}) {
        if (!j.contains(key)) bad(std::string("plan is missing \"") + key + "\"");
    }
    PlanSpec p;
    p.protocol = protocol_from_string(j.at("protocol").get<std::string>());
    p.channel = j.at("channel");
    p.observable = j.at("observable");
    p.state = j.at("state");
    if (j.contains("n_rounds")) {
        const auto n = j.at("n_rounds");
        if (!n.is_number_unsigned() || n.get<std::uint64_t>() == 0) {
            bad("\"n_rounds\" must be a positive integer");
        }
        p.n_rounds = n.get<std::uint64_t>();
    } else if (j.contains("hoeffding")) {
        p.hoeffding_eps = number(j.at("hoeffding"), "eps");
        p.hoeffding_delta = j.at("hoeffding").value("delta", 0.05);
    } else {
        bad("plan needs \"n_rounds\" or \"hoeffding\"");
    }
    if (j.contains("seed")) {
        if (!j.at("seed").is_number_unsigned()) bad("\"seed\" must be a non-negative integer");
        p.seed = j.at("seed").get<std::uint64_t>();
    }
    if (j.contains("mode")) p.mode = mode_from_string(j.at("mode").get<std::string>());
    return p;
}

}  // namespace qoot::io

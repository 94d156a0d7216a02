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

// JSON encodings.
//
// Complex numbers are [re, im] pairs (a bare number is read as real).
// Matrices are row-major nested arrays. Channel specs take one of
//   {"dim": 2, "kraus": [M, ...]}
//   {"superop": M}
//   {"builder": "gad", "params": {"p": 0.7, "eps": 0.36}}
// and a recovery report may be passed wherever a channel is expected; its
// "result.map" entry is used. Observables are {"matrix": M} or
// {"pauli": "Z"} (a string of I/X/Y/Z letters is a tensor product). States
// are {"matrix": M}, {"ket": [c, ...]} or {"label": "0" | "1" | "+" | "-" |
// "+i" | "-i"}.

#ifndef QOOT_IO_HPP_
#define QOOT_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "qoot/channel.hpp"
#include "qoot/estimate.hpp"
#include "qoot/qpd.hpp"
#include "qoot/recovery.hpp"

namespace qoot::io {

using Json = nlohmann::ordered_json;

/// Reads and parses a JSON file. Throws kInvalidArgument on I/O or syntax
/// errors.
Json read_json(const std::filesystem::path &path);

Json to_json(Complex z);
Json to_json(const ComplexMatrix &m);
Complex complex_from_json(const Json &j);
ComplexMatrix matrix_from_json(const Json &j);

/// {"dim", "superop"} plus "kraus" when the channel carries a Kraus set.
Json channel_to_json(const Channel &c);
Channel channel_from_json(const Json &j);
Observable observable_from_json(const Json &j);
ComplexMatrix state_from_json(const Json &j);

Json qpd_to_json(const Qpd &q);
Json recovery_to_json(const RecoveryMap &r);

Protocol protocol_from_string(const std::string &s);
std::string to_string(Protocol p);
PostSolver post_solver_from_string(const std::string &s);
Extrapolation extrapolation_from_string(const std::string &s);
EstimatorMode mode_from_string(const std::string &s);

/// Plan file:
///   {"protocol": "pre", "channel": ..., "observable": ..., "state": ...,
///    "n_rounds": 1000 | "hoeffding": {"eps": 0.02, "delta": 0.05},
///    "seed": 7, "mode": "expectation"}
/// `seed` is passed in by the caller after resolving overrides.
struct PlanSpec {
    Protocol protocol = Protocol::kPre;
    Json channel;
    Json observable;
    Json state;
    std::optional<std::uint64_t> n_rounds;
    double hoeffding_eps = 0.0;
    double hoeffding_delta = 0.05;
    std::optional<std::uint64_t> seed;
    EstimatorMode mode = EstimatorMode::kExpectation;
};
PlanSpec plan_spec_from_json(const Json &j);

}  // namespace qoot::io

#endif  // QOOT_IO_HPP_

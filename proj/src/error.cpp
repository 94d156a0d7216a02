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

#include "qoot/error.hpp"

namespace qoot {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::kInvalidArgument:
            return "invalid argument";
        case ErrorCode::kDimensionMismatch:
            return "dimension mismatch";
        case ErrorCode::kNonFinite:
            return "non-finite value";
        case ErrorCode::kNonHermitian:
            return "non-Hermitian input";
        case ErrorCode::kNotConverged:
            return "not converged";
        case ErrorCode::kNotInvertible:
            return "not invertible";
        case ErrorCode::kInadmissiblePair:
            return "inadmissible pair";
        case ErrorCode::kTracelessReference:
            return "traceless reference";
        case ErrorCode::kRegularizationFailure:
            return "regularization failure";
        case ErrorCode::kInfeasible:
            return "infeasible";
        case ErrorCode::kNonHermitianChoi:
            return "non-Hermitian Choi matrix";
    }
    return "unknown error";
}

bool Error::is_domain_rejection() const noexcept {
    switch (code_) {
        case ErrorCode::kNotInvertible:
        case ErrorCode::kInadmissiblePair:
        case ErrorCode::kTracelessReference:
        case ErrorCode::kRegularizationFailure:
        case ErrorCode::kInfeasible:
            return true;
        default:
            return false;
    }
}

}  // namespace qoot

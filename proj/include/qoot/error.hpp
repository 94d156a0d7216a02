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

#ifndef QOOT_ERROR_HPP_
#define QOOT_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace qoot {

enum class ErrorCode {
    kInvalidArgument,
    kDimensionMismatch,
    kNonFinite,
    kNonHermitian,
    kNotConverged,
    kNotInvertible,
    kInadmissiblePair,
    kTracelessReference,
    kRegularizationFailure,
    kInfeasible,
    kNonHermitianChoi,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (the CLI in particular) can tell domain rejections from bad input.
class Error : public std::runtime_error {
   public:
    Error(ErrorCode code, const std::string &message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

    /// True for mathematically meaningful rejections (the problem has no
    /// answer), as opposed to malformed input.
    bool is_domain_rejection() const noexcept;

   private:
    ErrorCode code_;
};

}  // namespace qoot

#endif  // QOOT_ERROR_HPP_

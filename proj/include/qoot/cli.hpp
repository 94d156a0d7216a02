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

#ifndef QOOT_CLI_HPP_
#define QOOT_CLI_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace qoot::cli {

inline constexpr int kSchemaVersion = 1;
inline constexpr const char *kToolVersion = "0.1.0";

enum ExitCode : int {
    kExitOk = 0,
    kExitMalformedInput = 1,
    kExitRejected = 2,
};

/// Runs the command line `args` (without the program name). The JSON report
/// goes to `out` unless --out names a file; diagnostics go to `err`.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

}  // namespace qoot::cli

#endif  // QOOT_CLI_HPP_

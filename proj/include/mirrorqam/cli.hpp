// Copyright 2026 The mirrorqam Authors
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

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mirrorqam::cli {

inline constexpr const char *kVersion = "0.1.0";

/// Process exit codes.
enum ExitCode : int {
    kSuccess = 0,
    kUsageError = 1,
    kParseError = 2,
    kDimensionError = 3,
    kZeroMass = 4,
    kInfeasibleCloning = 5,
    kInternalError = 70,
};

/// Runs one command line (without the program name), writing the report to
/// `out` and diagnostics to `err`. Returns the exit code.
int run(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace mirrorqam::cli

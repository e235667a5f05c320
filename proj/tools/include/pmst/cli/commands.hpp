// Copyright 2026 The pmst Authors
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
#include <string_view>
#include <vector>

namespace pmst::cli {

enum ExitCode : int {
    kExitOk = 0,
    kExitInputError = 2,
    /// The computation succeeded but the verdict is negative.
    kExitNegative = 3,
};

/// Runs the command line `args` (without the program name). Regular output
/// goes to `out`, diagnostics to `err`; `in` serves inputs given as "-".
int run(const std::vector<std::string> &args, std::istream &in, std::ostream &out, std::ostream &err);

std::string sha256_hex(std::string_view data);

/// UTC time in ISO 8601. Honors SOURCE_DATE_EPOCH.
std::string utc_timestamp();

} // namespace pmst::cli

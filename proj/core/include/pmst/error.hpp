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

#include <stdexcept>
#include <string>
#include <string_view>

namespace pmst {

enum class ErrorCode {
    InvalidInput,
    NotUnit,
    NotPure,
    InvalidPovm,
    NoValidWeights,
    NonExtremal,
    CoplanarStates,
    IllegitimateGram,
    DegenerateAdvantage,
    RankDeficient,
    ZeroSum,
    CoincidentVectors,
    OutOfRange,
    DimensionMismatch,
    MissingPovm,
    InvalidK,
    SizeLimit,
    TargetSuboptimal,
    MalformedFile,
};

/// Stable identifier for an error code, e.g. "CoplanarStates". Used on the
/// command line and in machine-readable reports.
std::string_view error_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string &what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }
    std::string_view name() const noexcept { return error_name(code_); }

  private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string &what) {
    throw Error(code, what);
}

} // namespace pmst

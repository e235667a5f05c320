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

#include "pmst/error.hpp"

namespace pmst {

std::string_view error_name(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::NotUnit: return "NotUnit";
    case ErrorCode::NotPure: return "NotPure";
    case ErrorCode::InvalidPovm: return "InvalidPovm";
    case ErrorCode::NoValidWeights: return "NoValidWeights";
    case ErrorCode::NonExtremal: return "NonExtremal";
    case ErrorCode::CoplanarStates: return "CoplanarStates";
    case ErrorCode::IllegitimateGram: return "IllegitimateGram";
    case ErrorCode::DegenerateAdvantage: return "DegenerateAdvantage";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::ZeroSum: return "ZeroSum";
    case ErrorCode::CoincidentVectors: return "CoincidentVectors";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::MissingPovm: return "MissingPovm";
    case ErrorCode::InvalidK: return "InvalidK";
    case ErrorCode::SizeLimit: return "SizeLimit";
    case ErrorCode::TargetSuboptimal: return "TargetSuboptimal";
    case ErrorCode::MalformedFile: return "MalformedFile";
    }
    return "Unknown";
}

} // namespace pmst

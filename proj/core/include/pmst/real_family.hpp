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

// Coplanar preparations that appear to reach the real-qubit maximum of the
// umbrella witness.

#include <array>

#include "pmst/qstate.hpp"

namespace pmst {

struct RealFamilyConfig {
    double c = 0.0;
    /// True for the c <= 1 branch (two states at (1,0,0), one of them m_1).
    bool small_branch = true;
    /// alpha for the small branch; beta and gamma for the large one.
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    std::array<Vec3, 4> states{};
};

/// Throws OutOfRange outside [0, 3]. At c = 1 the small branch is returned.
RealFamilyConfig real_family(double c);
/// The large-c branch, valid on [1, 3].
RealFamilyConfig real_family_large(double c);
/// The small-c branch, valid on [0, 1].
RealFamilyConfig real_family_small(double c);

/// Umbrella witness at real_family(c) with best-response measurements.
double real_family_value(double c);

} // namespace pmst

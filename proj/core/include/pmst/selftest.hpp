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

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pmst/bounds.hpp"

namespace pmst {

struct SelftestOptions {
    int trials = 64;
    std::uint64_t seed = 1;
    /// Admit fixed-outcome settings when computing the bound.
    bool allow_degenerate = true;
};

struct SelftestReport {
    bool passed = false;
    double target_value = 0.0;
    BoundResult bound;
    /// Starts whose value is within 1e-7 of the bound.
    int matching_starts = 0;
    /// Largest entrywise difference between a matching start's joint Gram
    /// matrix of (states, directions) and the target's.
    double worst_deviation = 0.0;
    double best_deviation = 0.0;
    /// POVM with n_b = -m_b when the target states define one.
    std::optional<Povm> povm;
    std::vector<std::string> notes;
};

/// Checks that every optimum found from `options.trials` random starts
/// reproduces the target configuration up to an orthogonal transformation.
/// All-zero rows and columns of w are left out of the comparison. Throws
/// TargetSuboptimal when the target falls short of the bound by more than 1e-7.
SelftestReport verify_selftest(const WitnessMatrix &w, const PMScenario &target, const SelftestOptions &options = {});

/// Joint Gram matrix of the selected states and directions.
Eigen::MatrixXd joint_gram(std::span<const Vec3> states, std::span<const Vec3> directions,
                           std::span<const Eigen::Index> rows, std::span<const Eigen::Index> cols);

} // namespace pmst

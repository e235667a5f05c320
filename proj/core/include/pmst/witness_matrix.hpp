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

#include <optional>

#include <Eigen/Dense>

#include "pmst/qstate.hpp"

namespace pmst {

/// Coefficients w_xy of a linear witness W = sum_xy w_xy [P(0|xy) - P(1|xy)],
/// optionally extended by a target POVM with penalty weight k:
/// W' = W - k sum_b P(b = x | x, target).
///
/// Rows index preparations x, columns index binary measurement settings y.
class WitnessMatrix {
  public:
    explicit WitnessMatrix(Eigen::MatrixXd coefficients);
    /// Throws InvalidK for penalty <= 0 and DimensionMismatch when the POVM
    /// has more outcomes than there are preparations.
    WitnessMatrix(Eigen::MatrixXd coefficients, Povm target, double penalty = 1.0);

    const Eigen::MatrixXd &coefficients() const noexcept { return w_; }
    Eigen::Index num_states() const noexcept { return w_.rows(); }
    Eigen::Index num_measurements() const noexcept { return w_.cols(); }
    double operator()(Eigen::Index x, Eigen::Index y) const { return w_(x, y); }

    const std::optional<Povm> &target_povm() const noexcept { return target_; }
    std::optional<double> penalty() const noexcept { return penalty_; }

    WitnessMatrix with_target(Povm target, double penalty = 1.0) const;
    WitnessMatrix without_target() const { return WitnessMatrix(w_); }

  private:
    Eigen::MatrixXd w_;
    std::optional<Povm> target_;
    std::optional<double> penalty_;
};

} // namespace pmst

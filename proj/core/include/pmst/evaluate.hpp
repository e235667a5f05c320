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

// Witness evaluation and the closed-form best responses of the see-saw.

#include <optional>
#include <span>
#include <vector>

#include "pmst/params.hpp"
#include "pmst/qstate.hpp"
#include "pmst/witness_matrix.hpp"

namespace pmst {

/// Preparations, binary measurements and an optional target POVM.
struct PMScenario {
    std::vector<QubitState> states;
    std::vector<BinaryMeasurement> measurements;
    std::optional<Povm> target;

    /// Pure states and projective (mu = 0) measurements from Bloch vectors.
    static PMScenario projective(std::span<const Vec3> states, std::span<const Vec3> measurements);

    std::vector<Vec3> state_vectors() const;
    std::vector<Vec3> measurement_vectors() const;
};

/// W = sum_y sum_x w_xy [mu_y + (1 - |mu_y|) m_x . v_y].
double eval_witness(const WitnessMatrix &w, const PMScenario &scenario);

/// sum_b P(b = x | x) of the target POVM over the first O preparations.
/// Throws MissingPovm if neither the witness nor the scenario carries one.
double povm_penalty_term(const WitnessMatrix &w, const PMScenario &scenario);

/// W' = W - k * povm_penalty_term. Requires a target POVM and penalty on `w`.
double eval_full_witness(const WitnessMatrix &w, const PMScenario &scenario);

/// Best preparations for fixed projective measurements.
struct StateResponse {
    std::vector<Vec3> states;   ///< u_x/|u_x|, or (0,0,1) when u_x vanishes
    std::vector<Vec3> u;        ///< u_x = sum_y w_xy v_y
    std::vector<double> u_norm; ///< |u_x|
    double value = 0.0;         ///< Q_v = sum_x |u_x|
};

/// Default Bloch vector used when a best response is not unique.
inline const Vec3 kDefaultDirection{0.0, 0.0, 1.0};
/// Responses with norm at or below this are treated as vanishing.
inline constexpr double kVanishingNorm = 1e-12;

StateResponse best_states(const Eigen::MatrixXd &w, std::span<const Vec3> measurements);

/// Best projective measurements for fixed preparations: v_y = s_y/|s_y| with
/// s_y = sum_x w_xy m_x. Columns with |s_y| <= 1e-12 are flagged and get the
/// default direction; the caller must pick one.
struct MeasurementResponse {
    std::vector<Vec3> directions;
    std::vector<double> s_norm;
    std::vector<bool> flagged;
    double value = 0.0; ///< sum_y |s_y|
};

MeasurementResponse best_measurements(const Eigen::MatrixXd &w, std::span<const Vec3> states);

/// Per-column comparison of the best genuine measurement against the best
/// fixed-outcome one, for fixed preparations.
struct ColumnReport {
    double genuine = 0.0;    ///< |sum_x w_xy m_x|
    double degenerate = 0.0; ///< |sum_x w_xy|
    double margin = 0.0;     ///< genuine - degenerate
    bool tie = false;        ///< |margin| <= 1e-12
    /// Ties count as genuine-preferred.
    bool genuine_preferred() const noexcept { return margin >= 0.0 || tie; }
    /// Outcome the fixed measurement should always return (+1 -> b = 0).
    int degenerate_sign = 1;
};

std::vector<ColumnReport> degenerate_check(const Eigen::MatrixXd &w, std::span<const Vec3> states);

/// |u_x| computed from the Gram matrix of unit measurement vectors:
/// sqrt(sum_y w_xy^2 + 2 sum_{y<y'} w_xy w_xy' gamma_yy').
std::vector<double> u_norms_from_gram(const Eigen::MatrixXd &w, const GramMatrix &gram);

/// Largest absolute stationarity condition of Q_v with respect to the
/// off-diagonal Gram entries for the 4x3 family:
///   p1^2/|u1| - p2^2/|u2| - p3^2/|u3| + p4^2/|u4|  (and the two sibling sums),
/// with |u_x| evaluated from `gram`. Rows with p_x = 0 contribute nothing.
double stationarity_residual(const FourByThreeParams &params, const GramMatrix &gram);

} // namespace pmst

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

// Witness constructions and their ideal optimal configurations.

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "pmst/evaluate.hpp"
#include "pmst/params.hpp"
#include "pmst/qstate.hpp"
#include "pmst/witness_matrix.hpp"

namespace pmst {

enum class Construction { FourByThree, General, FourBySix, Umbrella };

/// "4x3", "general", "4x6" or "umbrella".
std::string_view construction_name(Construction c) noexcept;
/// Inverse of construction_name. Throws InvalidInput for unknown names.
Construction parse_construction(std::string_view name);

using ConstructionParams =
    std::variant<std::monostate, FourByThreeParams, GeneralParams, PairwiseParams, UmbrellaParams>;

/// A witness together with the configuration that attains its maximum.
struct WitnessBundle {
    Construction construction = Construction::FourByThree;
    WitnessMatrix witness{Eigen::MatrixXd()};
    std::vector<Vec3> states;
    std::vector<Vec3> measurements;
    double ideal_value = 0.0;
    ConstructionParams params;
    bool doubled = false;
    std::vector<std::string> warnings;

    PMScenario scenario() const;
};

struct FourByThreeOptions {
    /// Explicit p, required when the states do not span three dimensions.
    std::optional<std::array<double, 4>> p;
    /// Throw DegenerateAdvantage when a degenerate setting beats a column at
    /// the ideal states. When false the bundle carries a warning instead.
    bool reject_degenerate = true;
    /// Attach the POVM with n_b = -m_b when those vectors define one.
    bool attach_target = true;
    double penalty = 1.0;
};

/// The 4x3 witness whose unique qubit optimum is attained at `m`.
WitnessBundle build_4x3(std::span<const Vec3> m, const FourByThreeOptions &options = {});

/// Coefficient matrix for given p and q.
Eigen::MatrixXd four_by_three_matrix(const FourByThreeParams &params);

/// Optimal Gram matrix of the measurement directions for given p and q.
/// Throws IllegitimateGram when some q_y vanishes.
GramMatrix optimal_gram_4x3(const FourByThreeParams &params);

/// Appends the negated rows and the negated states. Column sums of the
/// result vanish, so degenerate settings never help.
WitnessBundle double_rows(const WitnessBundle &bundle);
std::pair<WitnessMatrix, std::vector<Vec3>> double_rows(const WitnessMatrix &w, std::span<const Vec3> m);

struct GeneralOptions {
    bool reject_degenerate = true;
    bool attach_target = true;
    double penalty = 1.0;
};

/// w_xy = r_x (m_x . v_y) with v_y the eigenvectors of sum_x r_x m_x m_x^T
/// that are not orthogonal to every m_x.
WitnessBundle build_general(std::span<const Vec3> m, std::span<const double> r,
                            const GeneralOptions &options = {});

/// -sum_x r'_x m_x, normalized. Throws ZeroSum when the sum vanishes.
Vec3 augment_state(std::span<const Vec3> m, std::span<const double> r_prime);

/// Six pair settings for a four-outcome POVM (three for a three-outcome one),
/// with F_ij = lambda_i lambda_j |n_i - n_j| and m_x = -n_x.
WitnessBundle build_4x6(const Povm &povm, double penalty = 1.0);

/// Pairwise witness for states m with sum_x c_x m_x = 0. Negative c_x are
/// accepted only with `allow_signed`; the corresponding rows are negated.
WitnessBundle build_pairwise(std::span<const Vec3> m, std::span<const double> coefficients,
                             bool allow_signed = false);

/// max_i |sum_{j != i} F_ij (m_i - m_j)/|m_i - m_j| - tau_i m_i|.
double pairwise_equilibrium_residual(const Eigen::MatrixXd &F, std::span<const Vec3> m);

/// Umbrella-like member of the 4x3 family, c in [0, 3].
WitnessBundle umbrella(double c);
Eigen::MatrixXd umbrella_matrix(double c);
std::array<Vec3, 4> umbrella_states(double c);
std::array<Vec3, 3> umbrella_measurements(double c);
FourByThreeParams umbrella_params(double c);

} // namespace pmst

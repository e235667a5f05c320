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

// Parameter records produced by the witness constructions.

#include <array>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace pmst {

/// w_xy = s_xy p_x q_y with the fixed 4x3 sign pattern
///   + + +
///   + - -
///   - + -
///   - - +
/// and sum p_x^2 = sum q_y^2 = 1.
struct FourByThreeParams {
    std::array<double, 4> p{};
    std::array<double, 3> q{};
};

/// w_xy = r_x mu_xy where mu_xy are the coordinates of m_x in the eigenframe
/// of sum_x r_x m_x m_x^T.
struct GeneralParams {
    std::vector<double> r;
    Eigen::MatrixXd mu;            ///< M_m x M_v
    Eigen::Matrix3d operator_matrix = Eigen::Matrix3d::Zero(); ///< sum_x r_x m_x m_x^T
    Eigen::Vector3d eigenvalues = Eigen::Vector3d::Zero();     ///< descending
    int hessian_rank = 0;
};

/// w_{x,ij} = sign_x F_ij (delta_xi - delta_xj) over pairs i < j.
struct PairwiseParams {
    Eigen::MatrixXd F;                   ///< symmetric, zero diagonal
    std::vector<double> tau;             ///< radial force per state
    std::vector<std::pair<int, int>> pairs; ///< column order, 0-based
    std::vector<double> coefficients;    ///< null-combination coefficients (lambda)
    std::vector<int> row_signs;          ///< +1, or -1 for flipped rows
    double equilibrium_residual = 0.0;
};

struct UmbrellaParams {
    double c = 1.0;
    FourByThreeParams pq;
};

} // namespace pmst

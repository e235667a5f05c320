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

// Alternating maximization of sum_xy w_xy m_x . v_y over unit vectors, with
// an optional Newton refinement on the product of spheres.

#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "pmst/qstate.hpp"

namespace pmst {

/// Which preparations are admitted: classical bits, qubits with coplanar
/// (xz-plane) Bloch vectors, or general qubits.
enum class Model { Classical, RealQubit, ComplexQubit };

/// "classical", "real_qubit" or "complex_qubit".
std::string_view model_name(Model m) noexcept;
Model parse_model(std::string_view name);

struct SeesawOptions {
    int max_sweeps = 500;
    double tolerance = 1e-12;
    bool polish = true;
    int polish_iterations = 60;
    /// Record the value after every sweep.
    bool record_trace = false;
};

struct SeesawRun {
    std::vector<Vec3> states;
    std::vector<Vec3> measurements;
    /// Columns replaced by a fixed-outcome setting. Empty for genuine runs.
    std::vector<int> degenerate_sign;
    double value = 0.0;
    int sweeps = 0;
    bool converged = false;
    std::vector<double> trace;
};

/// Genuine-measurement alternation starting from measurement directions `v0`.
/// Under Model::RealQubit the directions must lie in the xz-plane and stay there.
SeesawRun seesaw(const Eigen::MatrixXd &w, std::vector<Vec3> v0, Model model, const SeesawOptions &options = {});

/// Alternation that also lets each column switch to a fixed outcome whenever
/// |sum_x w_xy| exceeds the genuine payoff. Starts from states `m0`.
SeesawRun seesaw_mixed(const Eigen::MatrixXd &w, std::vector<Vec3> m0, Model model,
                       const SeesawOptions &options = {});

/// Saddle-free Newton ascent of sum_xy w_xy m_x . v_y with rotation gauge
/// removed. Never decreases the value. Returns the final value.
double newton_polish(const Eigen::MatrixXd &w, std::vector<Vec3> &m, std::vector<Vec3> &v, Model model,
                     int max_iterations = 60);

/// sum_xy w_xy m_x . v_y.
double bilinear_value(const Eigen::MatrixXd &w, std::span<const Vec3> m, std::span<const Vec3> v);

} // namespace pmst

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

// Classical, real-qubit and complex-qubit maxima of a witness.

#include <cstdint>
#include <vector>

#include "pmst/evaluate.hpp"
#include "pmst/seesaw.hpp"
#include "pmst/witness.hpp"
#include "pmst/witness_matrix.hpp"

namespace pmst {

struct StartOutcome {
    double value = 0.0;
    /// Best value with genuine measurements only.
    double genuine_value = 0.0;
    std::vector<Vec3> states;
    std::vector<Vec3> measurements;
    std::vector<int> degenerate_sign; ///< 0 for genuine columns, else +-1
    int sweeps = 0;
    bool converged = false;
};

struct BoundResult {
    double value = 0.0;
    Model model = Model::ComplexQubit;
    PMScenario argmax;
    int starts_used = 0;
    /// Share of starts within 1e-9 of the best value.
    double converged_fraction = 0.0;
    std::uint64_t seed = 0;
    /// Best value over starts with genuine measurements only.
    double genuine_value = 0.0;
    std::vector<StartOutcome> starts;

    bool degenerate_used() const;
};

struct BoundOptions {
    /// 0 selects default_starts(model).
    int starts = 0;
    std::uint64_t seed = 1;
    /// Admit fixed-outcome settings. When false the maximum is over genuine
    /// projective measurements only.
    bool allow_degenerate = true;
    SeesawOptions seesaw;
    /// Keep per-start configurations in BoundResult::starts.
    bool keep_configurations = true;
};

/// 64 for complex qubits, 256 for real qubits, 1 otherwise.
int default_starts(Model model) noexcept;

/// Exact maximum over deterministic classical strategies. Throws SizeLimit
/// when M_m + 2 M_v exceeds 26.
BoundResult classical_bound(const WitnessMatrix &w);

/// Multi-start lower bound on the qubit maximum. Starts are independent,
/// run on worker_count() threads and seeded from (seed, start index).
BoundResult quantum_bound(const WitnessMatrix &w, Model model, const BoundOptions &options = {});

/// Dense angular grid over coplanar measurement directions, maximized over
/// every set of fixed-outcome columns. Supports up to three settings.
struct RealGridResult {
    double grid_value = 0.0;
    /// grid_value plus a Lipschitz allowance for the grid spacing.
    double upper_estimate = 0.0;
    /// Value after local refinement from the best grid point.
    double polished_value = 0.0;
    double resolution = 0.0;
    PMScenario argmax;
};
RealGridResult real_grid_bound(const WitnessMatrix &w, double resolution = 1e-3);

/// Runs the complex-qubit bound with fixed-outcome settings admitted and
/// doubles the rows of `bundle` when they beat its ideal value.
WitnessBundle ensure_genuine_optimum(const WitnessBundle &bundle, const BoundOptions &options = {});

/// Closed-form classical bound of the umbrella family.
double umbrella_classical_bound(double c);

} // namespace pmst

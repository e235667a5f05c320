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

// Circuit-level simulation of prepare-and-measure experiments.

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "pmst/evaluate.hpp"
#include "pmst/qstate.hpp"
#include "pmst/witness_matrix.hpp"

namespace pmst {

using Complex = std::complex<double>;

struct PrepAmplitudes {
    Complex alpha;
    Complex beta;
};

struct MeasAngles {
    double theta = 0.0; ///< [0, pi]
    double phi = 0.0;   ///< [0, 2 pi)
};

/// Amplitudes of the pure state with Bloch vector m, alpha real and >= 0.
/// At the south pole beta = 1. Throws NotPure unless |m| = 1 within 1e-9.
PrepAmplitudes prep_amplitudes(const Vec3 &m);

/// Polar and azimuthal angles of v. On the z-axis phi = 0 and theta is 0 or pi.
/// Throws NotUnit unless |v| = 1 within 1e-9.
MeasAngles meas_angles(const Vec3 &v);

/// Maps |0> to alpha|0> + beta|1>.
Eigen::Matrix2cd prep_unitary(const PrepAmplitudes &a);
/// Rows are the conjugated basis states of the measurement along v.
Eigen::Matrix2cd proj_unitary(const MeasAngles &angles);

struct CircuitEntry {
    int x = 0; ///< 0-based preparation index
    int y = 0; ///< 0-based setting index
    PrepAmplitudes prep;
    MeasAngles meas;
    std::int64_t shots = 0;
};

/// One circuit per (x, y), row-major in x, all with the same shot count.
struct CircuitSpec {
    int num_states = 0;
    int num_measurements = 0;
    std::int64_t shots = 0;
    /// Visibility: the prepared Bloch vectors are scaled by eta.
    double eta = 1.0;
    std::vector<CircuitEntry> entries;

    const CircuitEntry &at(int x, int y) const;
};

/// Requires pure states and projective measurements. Throws InvalidInput for
/// shots < 1 or eta outside [0, 1].
CircuitSpec build_circuit_spec(const PMScenario &scenario, std::int64_t shots, double eta = 1.0);

/// (P(0), P(1)) of one circuit with visibility eta.
std::pair<double, double> circuit_probabilities(const CircuitEntry &entry, double eta = 1.0);

/// P(0|x,y) for every circuit, rows x and columns y.
Eigen::MatrixXd outcome_probabilities(const CircuitSpec &spec);

/// Observed counts N(b|x,y) with the same total per cell.
class StatTable {
  public:
    StatTable() = default;
    StatTable(int num_states, int num_measurements);

    int num_states() const noexcept { return states_; }
    int num_measurements() const noexcept { return measurements_; }
    std::int64_t count(int x, int y, int b) const;
    void set_count(int x, int y, int b, std::int64_t n);
    /// Shots per cell. Throws InvalidInput unless every cell has the same
    /// positive total.
    std::int64_t shots() const;
    double frequency(int x, int y, int b) const;
    /// f(0|x,y), rows x and columns y.
    Eigen::MatrixXd frequencies() const;

    bool operator==(const StatTable &) const = default;

  private:
    std::size_t index(int x, int y, int b) const;
    int states_ = 0;
    int measurements_ = 0;
    std::vector<std::int64_t> counts_;
};

/// Exact binomial draws per cell from a stream keyed by (seed, x, y).
StatTable sample_counts(const CircuitSpec &spec, std::uint64_t seed);
StatTable sample_counts(const PMScenario &scenario, std::int64_t shots, std::uint64_t seed, double eta = 1.0);

struct WitnessEstimate {
    double value = 0.0;
    double sigma = 0.0;
    std::int64_t shots = 0;
    std::optional<double> sigma_analytic;
};

/// sum_xy w_xy [f(0|x,y) - f(1|x,y)] with cells treated as independent and
/// Var[f(0) - f(1)] = 4 f(0) f(1) / N within a cell.
WitnessEstimate estimate_witness(const WitnessMatrix &w, const StatTable &table);
/// Same estimator with the frequencies f(0|x,y) given directly.
WitnessEstimate estimate_from_probabilities(const WitnessMatrix &w, const Eigen::MatrixXd &p0, std::int64_t shots);

/// Sampling standard deviation of the umbrella witness at its ideal
/// configuration. Throws OutOfRange for c outside [0, 3] or shots < 1.
double sigma_analytic(double c, std::int64_t shots);

} // namespace pmst

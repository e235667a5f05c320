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

#include "pmst/simulator.hpp"

#include <cmath>
#include <numbers>

#include "pmst/error.hpp"
#include "pmst/random.hpp"

namespace pmst {

namespace {

constexpr double kAxisTolerance = 1e-24;

} // namespace

PrepAmplitudes prep_amplitudes(const Vec3 &m) {
    if (!is_unit(m)) fail(ErrorCode::NotPure, "preparation Bloch vector must have unit norm");
    const double rho2 = m(0) * m(0) + m(1) * m(1);
    PrepAmplitudes a;
    a.alpha = std::sqrt(std::max(0.0, (1.0 + m(2)) / 2.0));
    if (rho2 > kAxisTolerance) {
        a.beta = Complex(m(0), m(1)) / std::sqrt(rho2) * std::sqrt(std::max(0.0, (1.0 - m(2)) / 2.0));
    } else {
        a.beta = m(2) > 0.0 ? 0.0 : 1.0;
    }
    return a;
}

MeasAngles meas_angles(const Vec3 &v) {
    if (!is_unit(v)) fail(ErrorCode::NotUnit, "measurement direction must have unit norm");
    const double rho2 = v(0) * v(0) + v(1) * v(1);
    MeasAngles out;
    if (rho2 <= kAxisTolerance) {
        out.theta = v(2) > 0.0 ? 0.0 : std::numbers::pi;
        return out;
    }
    out.theta = std::atan2(std::sqrt(rho2), v(2));
    double phi = std::atan2(v(1), v(0));
    if (phi < 0.0) phi += 2.0 * std::numbers::pi;
    if (phi >= 2.0 * std::numbers::pi) phi = 0.0;
    out.phi = phi;
    return out;
}

Eigen::Matrix2cd prep_unitary(const PrepAmplitudes &a) {
    Eigen::Matrix2cd u;
    u << a.alpha, -std::conj(a.beta), a.beta, std::conj(a.alpha);
    return u;
}

Eigen::Matrix2cd proj_unitary(const MeasAngles &angles) {
    const double c = std::cos(angles.theta / 2.0);
    const double s = std::sin(angles.theta / 2.0);
    const Complex phase = std::polar(1.0, -angles.phi);
    Eigen::Matrix2cd u;
    u << c, phase * s, s, -phase * c;
    return u;
}

const CircuitEntry &CircuitSpec::at(int x, int y) const {
    if (x < 0 || x >= num_states || y < 0 || y >= num_measurements) {
        fail(ErrorCode::DimensionMismatch, "circuit index out of range");
    }
    return entries[static_cast<std::size_t>(x * num_measurements + y)];
}

CircuitSpec build_circuit_spec(const PMScenario &scenario, std::int64_t shots, double eta) {
    if (shots < 1) fail(ErrorCode::InvalidInput, "shot count must be positive");
    if (!(eta >= 0.0 && eta <= 1.0)) fail(ErrorCode::InvalidInput, "visibility must lie in [0, 1]");
    CircuitSpec spec;
    spec.num_states = static_cast<int>(scenario.states.size());
    spec.num_measurements = static_cast<int>(scenario.measurements.size());
    spec.shots = shots;
    spec.eta = eta;
    std::vector<MeasAngles> angles;
    for (const auto &meas : scenario.measurements) {
        if (meas.bias() != 0.0) fail(ErrorCode::InvalidInput, "circuits need projective measurements");
        angles.push_back(meas_angles(meas.direction()));
    }
    for (int x = 0; x < spec.num_states; ++x) {
        const auto prep = prep_amplitudes(scenario.states[static_cast<std::size_t>(x)].bloch());
        for (int y = 0; y < spec.num_measurements; ++y) {
            spec.entries.push_back(CircuitEntry{x, y, prep, angles[static_cast<std::size_t>(y)], shots});
        }
    }
    return spec;
}

std::pair<double, double> circuit_probabilities(const CircuitEntry &entry, double eta) {
    const double c = std::cos(entry.meas.theta / 2.0);
    const double s = std::sin(entry.meas.theta / 2.0);
    const Complex amp = c * entry.prep.alpha + std::polar(1.0, -entry.meas.phi) * s * entry.prep.beta;
    const double pure = std::clamp(std::norm(amp), 0.0, 1.0);
    const double p0 = std::clamp(eta * pure + (1.0 - eta) / 2.0, 0.0, 1.0);
    return {p0, 1.0 - p0};
}

Eigen::MatrixXd outcome_probabilities(const CircuitSpec &spec) {
    Eigen::MatrixXd p(spec.num_states, spec.num_measurements);
    for (const auto &e : spec.entries) p(e.x, e.y) = circuit_probabilities(e, spec.eta).first;
    return p;
}

StatTable::StatTable(int num_states, int num_measurements)
    : states_(num_states), measurements_(num_measurements),
      counts_(static_cast<std::size_t>(num_states) * static_cast<std::size_t>(num_measurements) * 2, 0) {
    if (num_states < 1 || num_measurements < 1) fail(ErrorCode::InvalidInput, "count table needs at least one cell");
}

std::size_t StatTable::index(int x, int y, int b) const {
    if (x < 0 || x >= states_ || y < 0 || y >= measurements_ || b < 0 || b > 1) {
        fail(ErrorCode::DimensionMismatch, "count index out of range");
    }
    return (static_cast<std::size_t>(x) * static_cast<std::size_t>(measurements_) + static_cast<std::size_t>(y)) * 2 +
           static_cast<std::size_t>(b);
}

std::int64_t StatTable::count(int x, int y, int b) const { return counts_[index(x, y, b)]; }

void StatTable::set_count(int x, int y, int b, std::int64_t n) {
    if (n < 0) fail(ErrorCode::InvalidInput, "counts must be nonnegative");
    counts_[index(x, y, b)] = n;
}

std::int64_t StatTable::shots() const {
    std::int64_t total = -1;
    for (int x = 0; x < states_; ++x) {
        for (int y = 0; y < measurements_; ++y) {
            const auto n = count(x, y, 0) + count(x, y, 1);
            if (total < 0) total = n;
            if (n != total) fail(ErrorCode::InvalidInput, "every (x, y) cell must have the same number of shots");
        }
    }
    if (total <= 0) fail(ErrorCode::InvalidInput, "cells have no shots");
    return total;
}

double StatTable::frequency(int x, int y, int b) const {
    const auto n = count(x, y, 0) + count(x, y, 1);
    if (n <= 0) fail(ErrorCode::InvalidInput, "cell has no shots");
    return static_cast<double>(count(x, y, b)) / static_cast<double>(n);
}

Eigen::MatrixXd StatTable::frequencies() const {
    Eigen::MatrixXd f(states_, measurements_);
    for (int x = 0; x < states_; ++x) {
        for (int y = 0; y < measurements_; ++y) f(x, y) = frequency(x, y, 0);
    }
    return f;
}

StatTable sample_counts(const CircuitSpec &spec, std::uint64_t seed) {
    StatTable table(spec.num_states, spec.num_measurements);
    for (const auto &e : spec.entries) {
        const double p0 = circuit_probabilities(e, spec.eta).first;
        Rng rng{seed, static_cast<std::uint64_t>(e.x), static_cast<std::uint64_t>(e.y)};
        std::int64_t zeros = 0;
        for (std::int64_t k = 0; k < e.shots; ++k) zeros += rng.uniform() < p0 ? 1 : 0;
        table.set_count(e.x, e.y, 0, zeros);
        table.set_count(e.x, e.y, 1, e.shots - zeros);
    }
    return table;
}

StatTable sample_counts(const PMScenario &scenario, std::int64_t shots, std::uint64_t seed, double eta) {
    return sample_counts(build_circuit_spec(scenario, shots, eta), seed);
}

WitnessEstimate estimate_from_probabilities(const WitnessMatrix &w, const Eigen::MatrixXd &p0, std::int64_t shots) {
    if (p0.rows() != w.num_states() || p0.cols() != w.num_measurements()) {
        fail(ErrorCode::DimensionMismatch, "frequency table does not match the witness");
    }
    if (shots < 1) fail(ErrorCode::InvalidInput, "shot count must be positive");
    WitnessEstimate est;
    est.shots = shots;
    double var = 0.0;
    for (Eigen::Index x = 0; x < p0.rows(); ++x) {
        for (Eigen::Index y = 0; y < p0.cols(); ++y) {
            const double f0 = p0(x, y);
            const double f1 = 1.0 - f0;
            est.value += w(x, y) * (f0 - f1);
            var += w(x, y) * w(x, y) * 4.0 * f0 * f1 / static_cast<double>(shots);
        }
    }
    est.sigma = std::sqrt(std::max(0.0, var));
    return est;
}

WitnessEstimate estimate_witness(const WitnessMatrix &w, const StatTable &table) {
    if (table.num_states() != w.num_states() || table.num_measurements() != w.num_measurements()) {
        fail(ErrorCode::DimensionMismatch, "count table does not match the witness");
    }
    return estimate_from_probabilities(w, table.frequencies(), table.shots());
}

double sigma_analytic(double c, std::int64_t shots) {
    if (!(c >= 0.0 && c <= 3.0)) fail(ErrorCode::OutOfRange, "umbrella parameter c must lie in [0, 3]");
    if (shots < 1) fail(ErrorCode::OutOfRange, "shot count must be positive");
    const double c2 = c * c;
    return std::sqrt((27.0 + 42.0 * c2 - 5.0 * c2 * c2) / (6.0 * static_cast<double>(shots))) / (3.0 + c2);
}

} // namespace pmst

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

#include "pmst/evaluate.hpp"

#include <cmath>

#include "pmst/error.hpp"

namespace pmst {

namespace {

void check_dimensions(const WitnessMatrix &w, const PMScenario &sc) {
    if (static_cast<Eigen::Index>(sc.states.size()) != w.num_states() ||
        static_cast<Eigen::Index>(sc.measurements.size()) != w.num_measurements()) {
        fail(ErrorCode::DimensionMismatch, "scenario does not match the witness dimensions");
    }
}

} // namespace

WitnessMatrix::WitnessMatrix(Eigen::MatrixXd coefficients) : w_(std::move(coefficients)) {
    if (!w_.allFinite()) fail(ErrorCode::InvalidInput, "witness coefficients must be finite");
}

WitnessMatrix::WitnessMatrix(Eigen::MatrixXd coefficients, Povm target, double penalty)
    : WitnessMatrix(std::move(coefficients)) {
    if (!(penalty > 0.0)) fail(ErrorCode::InvalidK, "POVM penalty weight k must be positive");
    if (static_cast<Eigen::Index>(target.outcomes()) > w_.rows()) {
        fail(ErrorCode::DimensionMismatch, "target POVM has more outcomes than preparations");
    }
    target_ = std::move(target);
    penalty_ = penalty;
}

WitnessMatrix WitnessMatrix::with_target(Povm target, double penalty) const {
    return WitnessMatrix(w_, std::move(target), penalty);
}

PMScenario PMScenario::projective(std::span<const Vec3> states, std::span<const Vec3> measurements) {
    PMScenario sc;
    sc.states.reserve(states.size());
    for (const auto &m : states) {
        require_unit(m, "preparation Bloch vector");
        sc.states.emplace_back(m);
    }
    sc.measurements.reserve(measurements.size());
    for (const auto &v : measurements) sc.measurements.push_back(BinaryMeasurement::projective(v));
    return sc;
}

std::vector<Vec3> PMScenario::state_vectors() const {
    std::vector<Vec3> out;
    out.reserve(states.size());
    for (const auto &s : states) out.push_back(s.bloch());
    return out;
}

std::vector<Vec3> PMScenario::measurement_vectors() const {
    std::vector<Vec3> out;
    out.reserve(measurements.size());
    for (const auto &m : measurements) out.push_back(m.direction());
    return out;
}

double eval_witness(const WitnessMatrix &w, const PMScenario &sc) {
    check_dimensions(w, sc);
    double total = 0.0;
    for (Eigen::Index y = 0; y < w.num_measurements(); ++y) {
        const auto &meas = sc.measurements[static_cast<std::size_t>(y)];
        const double mu = meas.bias();
        const double weight = 1.0 - std::abs(mu);
        for (Eigen::Index x = 0; x < w.num_states(); ++x) {
            const double corr = sc.states[static_cast<std::size_t>(x)].bloch().dot(meas.direction());
            total += w(x, y) * (mu + weight * corr);
        }
    }
    return total;
}

double povm_penalty_term(const WitnessMatrix &w, const PMScenario &sc) {
    const auto &povm = w.target_povm() ? w.target_povm() : sc.target;
    if (!povm) fail(ErrorCode::MissingPovm, "no target POVM attached");
    if (sc.states.size() < povm->outcomes()) {
        fail(ErrorCode::DimensionMismatch, "fewer preparations than POVM outcomes");
    }
    double sum = 0.0;
    for (std::size_t b = 0; b < povm->outcomes(); ++b) {
        sum += born_povm(sc.states[b], *povm)[b];
    }
    return sum;
}

double eval_full_witness(const WitnessMatrix &w, const PMScenario &sc) {
    if (!w.target_povm() || !w.penalty()) {
        fail(ErrorCode::MissingPovm, "full witness needs a target POVM and penalty weight");
    }
    return eval_witness(w, sc) - *w.penalty() * povm_penalty_term(w, sc);
}

StateResponse best_states(const Eigen::MatrixXd &w, std::span<const Vec3> measurements) {
    if (static_cast<Eigen::Index>(measurements.size()) != w.cols()) {
        fail(ErrorCode::DimensionMismatch, "measurement count does not match witness columns");
    }
    StateResponse out;
    const auto rows = static_cast<std::size_t>(w.rows());
    out.states.resize(rows);
    out.u.resize(rows);
    out.u_norm.resize(rows);
    for (Eigen::Index x = 0; x < w.rows(); ++x) {
        Vec3 u = Vec3::Zero();
        for (Eigen::Index y = 0; y < w.cols(); ++y) u += w(x, y) * measurements[static_cast<std::size_t>(y)];
        const double norm = u.norm();
        const auto i = static_cast<std::size_t>(x);
        out.u[i] = u;
        out.u_norm[i] = norm;
        out.states[i] = norm > kVanishingNorm ? Vec3(u / norm) : kDefaultDirection;
        out.value += norm;
    }
    return out;
}

MeasurementResponse best_measurements(const Eigen::MatrixXd &w, std::span<const Vec3> states) {
    if (static_cast<Eigen::Index>(states.size()) != w.rows()) {
        fail(ErrorCode::DimensionMismatch, "state count does not match witness rows");
    }
    MeasurementResponse out;
    const auto cols = static_cast<std::size_t>(w.cols());
    out.directions.resize(cols);
    out.s_norm.resize(cols);
    out.flagged.resize(cols);
    for (Eigen::Index y = 0; y < w.cols(); ++y) {
        Vec3 s = Vec3::Zero();
        for (Eigen::Index x = 0; x < w.rows(); ++x) s += w(x, y) * states[static_cast<std::size_t>(x)];
        const double norm = s.norm();
        const auto i = static_cast<std::size_t>(y);
        out.s_norm[i] = norm;
        out.flagged[i] = norm <= kVanishingNorm;
        out.directions[i] = out.flagged[i] ? kDefaultDirection : Vec3(s / norm);
        out.value += norm;
    }
    return out;
}

std::vector<ColumnReport> degenerate_check(const Eigen::MatrixXd &w, std::span<const Vec3> states) {
    const auto response = best_measurements(w, states);
    std::vector<ColumnReport> out(static_cast<std::size_t>(w.cols()));
    for (Eigen::Index y = 0; y < w.cols(); ++y) {
        auto &col = out[static_cast<std::size_t>(y)];
        const double sum = w.col(y).sum();
        col.genuine = response.s_norm[static_cast<std::size_t>(y)];
        col.degenerate = std::abs(sum);
        col.margin = col.genuine - col.degenerate;
        col.tie = std::abs(col.margin) <= 1e-12;
        col.degenerate_sign = sum >= 0.0 ? 1 : -1;
    }
    return out;
}

std::vector<double> u_norms_from_gram(const Eigen::MatrixXd &w, const GramMatrix &gram) {
    if (gram.size() != w.cols()) fail(ErrorCode::DimensionMismatch, "Gram size does not match witness columns");
    std::vector<double> out(static_cast<std::size_t>(w.rows()));
    for (Eigen::Index x = 0; x < w.rows(); ++x) {
        double sq = 0.0;
        for (Eigen::Index y = 0; y < w.cols(); ++y) {
            sq += w(x, y) * w(x, y);
            for (Eigen::Index z = y + 1; z < w.cols(); ++z) sq += 2.0 * w(x, y) * w(x, z) * gram(y, z);
        }
        out[static_cast<std::size_t>(x)] = std::sqrt(std::max(0.0, sq));
    }
    return out;
}

double stationarity_residual(const FourByThreeParams &params, const GramMatrix &gram) {
    if (gram.size() != 3) fail(ErrorCode::DimensionMismatch, "4x3 stationarity needs a 3x3 Gram matrix");
    const auto &p = params.p;
    const auto &q = params.q;
    const double g12 = gram(0, 1), g13 = gram(0, 2), g23 = gram(1, 2);
    const double a = q[0] * q[1] * g12, b = q[0] * q[2] * g13, c = q[1] * q[2] * g23;
    const std::array<double, 4> inner{1.0 + 2.0 * (a + b + c), 1.0 + 2.0 * (-a - b + c),
                                      1.0 + 2.0 * (-a + b - c), 1.0 + 2.0 * (a - b - c)};
    std::array<double, 4> ratio{};
    for (std::size_t x = 0; x < 4; ++x) {
        if (p[x] == 0.0) continue;
        const double u = std::abs(p[x]) * std::sqrt(std::max(0.0, inner[x]));
        ratio[x] = u > 0.0 ? p[x] * p[x] / u : HUGE_VAL;
    }
    const double r1 = ratio[0] - ratio[1] - ratio[2] + ratio[3];
    const double r2 = ratio[0] - ratio[1] + ratio[2] - ratio[3];
    const double r3 = ratio[0] + ratio[1] - ratio[2] - ratio[3];
    return std::max({std::abs(r1), std::abs(r2), std::abs(r3)});
}

} // namespace pmst

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

#include "pmst/selftest.hpp"

#include <cmath>

#include "pmst/error.hpp"

namespace pmst {

Eigen::MatrixXd joint_gram(std::span<const Vec3> states, std::span<const Vec3> directions,
                           std::span<const Eigen::Index> rows, std::span<const Eigen::Index> cols) {
    std::vector<Vec3> all;
    for (auto x : rows) all.push_back(states[static_cast<std::size_t>(x)]);
    for (auto y : cols) all.push_back(directions[static_cast<std::size_t>(y)]);
    const auto n = static_cast<Eigen::Index>(all.size());
    Eigen::MatrixXd g(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) g(i, j) = all[static_cast<std::size_t>(i)].dot(all[static_cast<std::size_t>(j)]);
    }
    return g;
}

SelftestReport verify_selftest(const WitnessMatrix &witness, const PMScenario &target, const SelftestOptions &options) {
    const auto &w = witness.coefficients();
    const WitnessMatrix plain = witness.without_target();
    SelftestReport report;
    report.target_value = eval_witness(plain, target);

    for (const auto &meas : target.measurements) {
        if (meas.is_degenerate() || meas.bias() != 0.0) {
            fail(ErrorCode::InvalidInput, "self-test targets must use projective measurements");
        }
    }

    BoundOptions bo;
    bo.starts = options.trials;
    bo.seed = options.seed;
    bo.allow_degenerate = options.allow_degenerate;
    report.bound = quantum_bound(plain, Model::ComplexQubit, bo);
    if (report.target_value < report.bound.value - 1e-7) {
        fail(ErrorCode::TargetSuboptimal, "target reaches " + std::to_string(report.target_value) +
                                              " but the bound is " + std::to_string(report.bound.value));
    }

    std::vector<Eigen::Index> rows, cols;
    for (Eigen::Index x = 0; x < w.rows(); ++x) {
        if (w.row(x).cwiseAbs().maxCoeff() > 0.0) {
            rows.push_back(x);
        } else {
            report.notes.push_back("state " + std::to_string(x + 1) + " has an all-zero row and is not tested");
        }
    }
    for (Eigen::Index y = 0; y < w.cols(); ++y) {
        if (w.col(y).cwiseAbs().maxCoeff() > 0.0) cols.push_back(y);
    }

    const auto tm = target.state_vectors();
    const auto tv = target.measurement_vectors();
    const Eigen::MatrixXd reference = joint_gram(tm, tv, rows, cols);

    report.worst_deviation = 0.0;
    report.best_deviation = HUGE_VAL;
    bool degenerate_optimum = false;
    for (const auto &start : report.bound.starts) {
        if (start.value < report.bound.value - 1e-7) continue;
        ++report.matching_starts;
        bool uses_fixed = false;
        for (auto y : cols) uses_fixed |= start.degenerate_sign[static_cast<std::size_t>(y)] != 0;
        double dev = HUGE_VAL;
        if (uses_fixed) {
            degenerate_optimum = true;
        } else {
            dev = (joint_gram(start.states, start.measurements, rows, cols) - reference).cwiseAbs().maxCoeff();
        }
        report.worst_deviation = std::max(report.worst_deviation, dev);
        report.best_deviation = std::min(report.best_deviation, dev);
    }
    if (degenerate_optimum) report.notes.push_back("an optimum uses a fixed-outcome setting");
    report.passed = report.matching_starts > 0 && report.best_deviation <= 1e-7 && report.worst_deviation < 1e-5;

    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = i + 1; j < rows.size(); ++j) {
            const auto a = static_cast<std::size_t>(rows[i]);
            const auto b = static_cast<std::size_t>(rows[j]);
            if ((tm[a] - tm[b]).norm() <= 1e-9) {
                report.notes.push_back("states " + std::to_string(a + 1) + " and " + std::to_string(b + 1) +
                                       " coincide; reduced uniqueness");
            }
        }
    }
    if (tm.size() == 3 || tm.size() == 4) {
        std::vector<Vec3> n;
        for (const auto &m : tm) n.emplace_back(-m);
        try {
            report.povm = povm_from_bloch(n);
        } catch (const Error &e) {
            report.notes.push_back(std::string("POVM reconstruction failed: ") + std::string(e.name()));
        }
    }
    return report;
}

} // namespace pmst

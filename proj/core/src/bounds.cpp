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

#include "pmst/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "pmst/error.hpp"
#include "pmst/parallel.hpp"
#include "pmst/random.hpp"

namespace pmst {

namespace {

constexpr std::size_t kMaxFixedCandidates = 10;

PMScenario make_scenario(std::span<const Vec3> m, std::span<const Vec3> v, std::span<const int> signs) {
    PMScenario sc;
    for (const auto &x : m) sc.states.emplace_back(x);
    for (std::size_t y = 0; y < v.size(); ++y) {
        const int s = y < signs.size() ? signs[y] : 0;
        sc.measurements.push_back(s != 0 ? BinaryMeasurement::fixed(s) : BinaryMeasurement::projective(v[y]));
    }
    return sc;
}

StartOutcome run_start(const Eigen::MatrixXd &w, Model model, const BoundOptions &options, std::size_t index) {
    Rng rng{options.seed, static_cast<std::uint64_t>(index)};
    std::vector<Vec3> v0(static_cast<std::size_t>(w.cols()));
    for (auto &v : v0) v = model == Model::RealQubit ? rng.circle_xz() : rng.sphere();

    auto genuine = seesaw(w, std::move(v0), model, options.seesaw);
    StartOutcome out;
    out.genuine_value = genuine.value;
    out.value = genuine.value;
    out.sweeps = genuine.sweeps;
    out.converged = genuine.converged;
    out.states = genuine.states;
    out.measurements = genuine.measurements;
    out.degenerate_sign.assign(static_cast<std::size_t>(w.cols()), 0);
    if (!options.allow_degenerate) return out;

    // A fixed-outcome column contributes |column sum| whatever the states, so
    // the optimum splits into a choice of fixed columns plus a genuine
    // problem on the rest. Only columns with a nonzero sum can gain.
    const Eigen::VectorXd colsum = w.colwise().sum().transpose();
    std::vector<Eigen::Index> candidates;
    for (Eigen::Index y = 0; y < w.cols(); ++y) {
        if (std::abs(colsum(y)) > 1e-12) candidates.push_back(y);
    }
    if (candidates.size() > kMaxFixedCandidates) {
        auto mixed = seesaw_mixed(w, genuine.states, model, options.seesaw);
        if (mixed.value > out.value + 1e-12) {
            out.value = mixed.value;
            out.sweeps += mixed.sweeps;
            out.converged = mixed.converged;
            out.states = std::move(mixed.states);
            out.measurements = std::move(mixed.measurements);
            out.degenerate_sign = std::move(mixed.degenerate_sign);
        }
        return out;
    }
    for (std::uint32_t mask = 1; mask < (1u << candidates.size()); ++mask) {
        Eigen::MatrixXd rest = w;
        double fixed = 0.0;
        std::vector<int> signs(static_cast<std::size_t>(w.cols()), 0);
        for (std::size_t k = 0; k < candidates.size(); ++k) {
            if (!(mask >> k & 1u)) continue;
            const auto y = candidates[k];
            rest.col(y).setZero();
            fixed += std::abs(colsum(y));
            signs[static_cast<std::size_t>(y)] = colsum(y) >= 0.0 ? 1 : -1;
        }
        auto run = seesaw(rest, genuine.measurements, model, options.seesaw);
        out.sweeps += run.sweeps;
        if (run.value + fixed > out.value + 1e-12) {
            out.value = run.value + fixed;
            out.converged = run.converged;
            out.states = std::move(run.states);
            out.measurements = std::move(run.measurements);
            out.degenerate_sign = std::move(signs);
        }
    }
    return out;
}

} // namespace

bool BoundResult::degenerate_used() const {
    return std::any_of(argmax.measurements.begin(), argmax.measurements.end(),
                       [](const BinaryMeasurement &m) { return m.is_degenerate(); });
}

int default_starts(Model model) noexcept {
    switch (model) {
    case Model::ComplexQubit: return 64;
    case Model::RealQubit: return 256;
    case Model::Classical: return 1;
    }
    return 1;
}

BoundResult classical_bound(const WitnessMatrix &witness) {
    const auto &w = witness.coefficients();
    const Eigen::Index mm = w.rows();
    const Eigen::Index mv = w.cols();
    if (mm + 2 * mv > 26) {
        fail(ErrorCode::SizeLimit, "classical enumeration limited to M_m + 2 M_v <= 26");
    }
    const Eigen::VectorXd colsum = w.colwise().sum().transpose();
    const std::uint64_t total = std::uint64_t{1} << mm;
    double best = -HUGE_VAL;
    std::uint64_t best_mask = 0;
    Eigen::VectorXd s(mm);
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        for (Eigen::Index x = 0; x < mm; ++x) s(x) = (mask >> x) & 1U ? -1.0 : 1.0;
        const Eigen::VectorXd corr = w.transpose() * s;
        double value = 0.0;
        for (Eigen::Index y = 0; y < mv; ++y) value += std::max(std::abs(corr(y)), std::abs(colsum(y)));
        if (value > best) {
            best = value;
            best_mask = mask;
        }
    }

    BoundResult r;
    r.model = Model::Classical;
    r.starts_used = 1;
    r.converged_fraction = 1.0;
    std::vector<Vec3> m;
    for (Eigen::Index x = 0; x < mm; ++x) m.push_back((best_mask >> x) & 1U ? Vec3(-Vec3::UnitZ()) : Vec3::UnitZ());
    for (Eigen::Index x = 0; x < mm; ++x) s(x) = (best_mask >> x) & 1U ? -1.0 : 1.0;
    const Eigen::VectorXd corr = w.transpose() * s;
    std::vector<Vec3> v;
    std::vector<int> signs;
    for (Eigen::Index y = 0; y < mv; ++y) {
        v.push_back(corr(y) >= 0.0 ? Vec3::UnitZ() : Vec3(-Vec3::UnitZ()));
        signs.push_back(std::abs(colsum(y)) > std::abs(corr(y)) ? (colsum(y) >= 0.0 ? 1 : -1) : 0);
    }
    r.argmax = make_scenario(m, v, signs);
    r.value = eval_witness(witness.without_target(), r.argmax);
    r.genuine_value = r.value;
    return r;
}

BoundResult quantum_bound(const WitnessMatrix &witness, Model model, const BoundOptions &options) {
    if (model == Model::Classical) return classical_bound(witness);
    const int starts = options.starts > 0 ? options.starts : default_starts(model);
    const auto &w = witness.coefficients();

    std::vector<StartOutcome> outcomes(static_cast<std::size_t>(starts));
    parallel_for(outcomes.size(), [&](std::size_t i) { outcomes[i] = run_start(w, model, options, i); });

    std::size_t best = 0;
    double genuine = -HUGE_VAL;
    for (std::size_t i = 0; i < outcomes.size(); ++i) {
        if (outcomes[i].value > outcomes[best].value) best = i;
        genuine = std::max(genuine, outcomes[i].genuine_value);
    }

    BoundResult r;
    r.model = model;
    r.seed = options.seed;
    r.starts_used = starts;
    r.genuine_value = genuine;
    const auto &top = outcomes[best];
    r.argmax = make_scenario(top.states, top.measurements, top.degenerate_sign);
    r.value = eval_witness(witness.without_target(), r.argmax);
    const auto near = std::count_if(outcomes.begin(), outcomes.end(),
                                    [&](const StartOutcome &o) { return o.value >= top.value - 1e-9; });
    r.converged_fraction = static_cast<double>(near) / static_cast<double>(starts);
    if (options.keep_configurations) {
        r.starts = std::move(outcomes);
    } else {
        for (auto &o : outcomes) {
            o.states.clear();
            o.measurements.clear();
            o.degenerate_sign.clear();
        }
        r.starts = std::move(outcomes);
    }
    return r;
}

RealGridResult real_grid_bound(const WitnessMatrix &witness, double resolution) {
    const auto &w = witness.coefficients();
    const Eigen::Index mm = w.rows();
    const Eigen::Index mv = w.cols();
    if (mv > 3) fail(ErrorCode::SizeLimit, "grid refinement supports at most three settings");
    if (!(resolution > 0.0 && resolution < 1.0)) fail(ErrorCode::InvalidInput, "grid resolution must lie in (0, 1)");
    const Eigen::VectorXd colsum = w.colwise().sum().transpose();

    const auto steps = static_cast<int>(std::ceil(2.0 * std::numbers::pi / resolution));
    const double h = 2.0 * std::numbers::pi / steps;
    std::vector<double> cs(static_cast<std::size_t>(steps)), sn(static_cast<std::size_t>(steps));
    for (int k = 0; k < steps; ++k) {
        cs[static_cast<std::size_t>(k)] = std::cos(k * h);
        sn[static_cast<std::size_t>(k)] = std::sin(k * h);
    }
    auto dir = [&](int k) {
        return Vec3(cs[static_cast<std::size_t>(k)], 0.0, sn[static_cast<std::size_t>(k)]);
    };

    RealGridResult out;
    out.resolution = h;
    out.grid_value = -HUGE_VAL;
    out.upper_estimate = -HUGE_VAL;
    std::vector<Vec3> best_v;
    std::vector<int> best_signs;
    Eigen::MatrixXd best_active;

    for (unsigned subset = 0; subset < (1U << mv); ++subset) {
        std::vector<Eigen::Index> genuine;
        double fixed = 0.0;
        std::vector<int> signs(static_cast<std::size_t>(mv), 0);
        for (Eigen::Index y = 0; y < mv; ++y) {
            if (subset >> y & 1U) {
                fixed += std::abs(colsum(y));
                signs[static_cast<std::size_t>(y)] = colsum(y) >= 0.0 ? 1 : -1;
            } else {
                genuine.push_back(y);
            }
        }
        Eigen::MatrixXd active = w;
        for (Eigen::Index y = 0; y < mv; ++y) {
            if (signs[static_cast<std::size_t>(y)] != 0) active.col(y).setZero();
        }
        std::vector<Vec3> v(static_cast<std::size_t>(mv), Vec3::UnitX());
        double value = fixed;
        double slack = 0.0;
        // The first genuine direction is fixed by rotation invariance and the
        // second restricted to a half circle by reflection.
        if (genuine.size() == 1) {
            value += w.col(genuine[0]).cwiseAbs().sum();
        } else if (genuine.size() >= 2) {
            const Eigen::Index a = genuine[0], b = genuine[1];
            const bool three = genuine.size() == 3;
            const Eigen::Index c = three ? genuine[2] : 0;
            double best = -HUGE_VAL;
            int bi = 0, bj = 0;
            const int half = steps / 2 + 1;
            for (int i = 0; i < half; ++i) {
                for (int j = 0; j < (three ? steps : 1); ++j) {
                    double total = 0.0;
                    for (Eigen::Index x = 0; x < mm; ++x) {
                        double ux = w(x, a) + w(x, b) * cs[static_cast<std::size_t>(i)];
                        double uz = w(x, b) * sn[static_cast<std::size_t>(i)];
                        if (three) {
                            ux += w(x, c) * cs[static_cast<std::size_t>(j)];
                            uz += w(x, c) * sn[static_cast<std::size_t>(j)];
                        }
                        total += std::sqrt(ux * ux + uz * uz);
                    }
                    if (total > best) {
                        best = total;
                        bi = i;
                        bj = j;
                    }
                }
            }
            value += best;
            slack = 0.5 * h * w.col(b).cwiseAbs().sum();
            if (three) slack += 0.5 * h * w.col(c).cwiseAbs().sum();
            v[static_cast<std::size_t>(b)] = dir(bi);
            if (three) v[static_cast<std::size_t>(c)] = dir(bj);
        }
        if (value > out.grid_value) {
            out.grid_value = value;
            best_v = v;
            best_signs = signs;
            best_active = active;
        }
        out.upper_estimate = std::max(out.upper_estimate, value + slack);
    }

    auto m = best_states(best_active, best_v).states;
    newton_polish(best_active, m, best_v, Model::RealQubit);
    out.argmax = make_scenario(m, best_v, best_signs);
    out.polished_value = eval_witness(witness.without_target(), out.argmax);
    out.upper_estimate = std::max(out.upper_estimate, out.polished_value);
    return out;
}

WitnessBundle ensure_genuine_optimum(const WitnessBundle &bundle, const BoundOptions &options) {
    BoundOptions opts = options;
    opts.allow_degenerate = true;
    opts.keep_configurations = false;
    const auto bound = quantum_bound(bundle.witness, Model::ComplexQubit, opts);
    if (bound.value <= bundle.ideal_value + 1e-7) return bundle;
    auto doubled = double_rows(bundle);
    doubled.warnings.push_back("fixed-outcome settings reach " + std::to_string(bound.value) + " > " +
                               std::to_string(bundle.ideal_value) + "; rows doubled");
    return doubled;
}

double umbrella_classical_bound(double c) {
    if (!(c >= 0.0 && c <= 3.0)) fail(ErrorCode::OutOfRange, "umbrella parameter c must lie in [0, 3]");
    if (c <= 1.0) return (c + 5.0) / std::sqrt(3.0 * (3.0 + c * c));
    return (c + 1.0) * std::sqrt(3.0 / (3.0 + c * c));
}

} // namespace pmst

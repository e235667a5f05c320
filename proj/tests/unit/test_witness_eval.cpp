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

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "pmst/evaluate.hpp"
#include "pmst/witness.hpp"

using namespace pmst;
using namespace pmst::testing;

namespace {

// Direct sum over cells of w_xy [P(0|x,y) - P(1|x,y)].
double witness_oracle(const Eigen::MatrixXd &w, const PMScenario &sc) {
    double total = 0.0;
    for (int x = 0; x < w.rows(); ++x)
        for (int y = 0; y < w.cols(); ++y) {
            const auto p = born_binary(sc.states[x], sc.measurements[y]);
            total += w(x, y) * (p[0] - p[1]);
        }
    return total;
}

PMScenario random_scenario(Rng &rng, int mm, int mv) {
    PMScenario sc;
    for (int x = 0; x < mm; ++x) sc.states.emplace_back(rng.sphere());
    for (int y = 0; y < mv; ++y) sc.measurements.emplace_back(2 * rng.uniform() - 1, rng.sphere());
    return sc;
}

} // namespace

TEST(EvalWitness, UmbrellaIdealIsTwo) {
    for (double c : {0.0, 0.5, 1.0, 2.0, 3.0}) {
        const auto b = umbrella(c);
        EXPECT_NEAR(eval_witness(b.witness, b.scenario()), 2.0, 1e-12);
    }
}

TEST(EvalWitness, ZeroMatrix) {
    Rng rng{1};
    EXPECT_EQ(eval_witness(WitnessMatrix(Eigen::MatrixXd::Zero(4, 3)), random_scenario(rng, 4, 3)), 0.0);
}

TEST(EvalWitness, AllFixedIsStateIndependent) {
    Rng rng{2};
    const Eigen::MatrixXd w = Eigen::MatrixXd::Random(4, 3);
    auto sc = random_scenario(rng, 4, 3);
    for (auto &m : sc.measurements) m = BinaryMeasurement(1.0, rng.sphere());
    EXPECT_NEAR(eval_witness(WitnessMatrix(w), sc), w.sum(), 1e-14);
}

TEST(EvalWitness, MatchesBornOracle) {
    Rng rng{3};
    for (int i = 0; i < 100; ++i) {
        const Eigen::MatrixXd w = Eigen::MatrixXd::Random(5, 4);
        const auto sc = random_scenario(rng, 5, 4);
        EXPECT_NEAR(eval_witness(WitnessMatrix(w), sc), witness_oracle(w, sc), 1e-13);
    }
}

TEST(EvalWitness, RotationInvariant) {
    Rng rng{4};
    for (int i = 0; i < 100; ++i) {
        const Eigen::MatrixXd w = Eigen::MatrixXd::Random(4, 3);
        auto sc = random_scenario(rng, 4, 3);
        const double before = eval_witness(WitnessMatrix(w), sc);
        const auto R = random_rotation(rng);
        for (auto &s : sc.states) s = QubitState(R * s.bloch());
        for (auto &m : sc.measurements) m = BinaryMeasurement(m.bias(), (R * m.direction()).normalized());
        EXPECT_NEAR(eval_witness(WitnessMatrix(w), sc), before, 1e-13);
    }
}

TEST(EvalWitness, DimensionMismatch) {
    Rng rng{5};
    try {
        eval_witness(WitnessMatrix(Eigen::MatrixXd::Zero(4, 3)), random_scenario(rng, 3, 3));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::DimensionMismatch);
    }
}

TEST(FullWitness, PenaltyVanishesWhenAntiAligned) {
    const auto b = umbrella(1.0);
    ASSERT_TRUE(b.witness.target_povm());
    EXPECT_NEAR(eval_full_witness(b.witness, b.scenario()), 2.0, 1e-12);
    EXPECT_NEAR(povm_penalty_term(b.witness, b.scenario()), 0.0, 1e-12);
}

TEST(FullWitness, AlignedStatesPayTwice) {
    const auto sic = sic_povm();
    const Eigen::MatrixXd w = Eigen::MatrixXd::Random(4, 3);
    const WitnessMatrix wm(w, sic, 1.0);
    PMScenario sc = PMScenario::projective(sic.vectors(), std::vector<Vec3>(3, Vec3(0, 0, 1)));
    EXPECT_NEAR(eval_full_witness(wm, sc), eval_witness(wm, sc) - 2.0, 1e-12);
}

TEST(FullWitness, RequiresPositiveKAndTarget) {
    try {
        WitnessMatrix(Eigen::MatrixXd::Zero(4, 3), sic_povm(), 0.0);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::InvalidK);
    }
    Rng rng{6};
    try {
        eval_full_witness(WitnessMatrix(Eigen::MatrixXd::Zero(4, 3)), random_scenario(rng, 4, 3));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::MissingPovm);
    }
}

TEST(BestStates, RecoversCoplanarTriple) {
    const double r3 = std::sqrt(3.0);
    Eigen::MatrixXd w(3, 2);
    w << r3 / 2, 0.5, r3 / 2, -0.5, -r3, 0;
    const std::vector<Vec3> v{Vec3(r3 / 2, 0, 0.5), Vec3(0.5, 0, -r3 / 2)};
    const auto resp = best_states(w, v);
    const auto expected = coplanar_triple();
    for (int x = 0; x < 3; ++x) EXPECT_LE((resp.states[x] - expected[x]).norm(), 1e-12);
    EXPECT_NEAR(resp.value, 2 + r3, 1e-12);
}

TEST(BestStates, SingleColumnAndZeroRow) {
    Eigen::MatrixXd w(3, 1);
    w << 1, -1, 0;
    const std::vector<Vec3> v{Vec3(0, 0, 1)};
    const auto resp = best_states(w, v);
    EXPECT_EQ(resp.states[0], Vec3(0, 0, 1));
    EXPECT_EQ(resp.states[1], Vec3(0, 0, -1));
    EXPECT_EQ(resp.states[2], kDefaultDirection);
    EXPECT_NEAR(resp.value, 2.0, 1e-15);
}

TEST(BestStates, ValueEqualsWitnessAtResponse) {
    Rng rng{7};
    for (int i = 0; i < 100; ++i) {
        const Eigen::MatrixXd w = Eigen::MatrixXd::Random(4, 3);
        std::vector<Vec3> v{rng.sphere(), rng.sphere(), rng.sphere()};
        const auto resp = best_states(w, v);
        EXPECT_NEAR(eval_witness(WitnessMatrix(w), PMScenario::projective(resp.states, v)), resp.value, 1e-12);
    }
}

TEST(BestMeasurements, UmbrellaDirections) {
    const auto m = umbrella_states(1.0);
    const auto v = umbrella_measurements(1.0);
    const auto resp = best_measurements(umbrella_matrix(1.0), m);
    for (int y = 0; y < 3; ++y) EXPECT_LE((resp.directions[y] - v[y]).norm(), 1e-12);
}

TEST(BestMeasurements, SingleStateAndCancellation) {
    Rng rng{8};
    const Vec3 m = rng.sphere();
    Eigen::MatrixXd one(1, 1);
    one << 1.0;
    const std::vector<Vec3> single{m};
    EXPECT_LE((best_measurements(one, single).directions[0] - m).norm(), 1e-15);
    Eigen::MatrixXd pair(2, 1);
    pair << 1.0, 1.0;
    const std::vector<Vec3> opposite{m, Vec3(-m)};
    EXPECT_TRUE(best_measurements(pair, opposite).flagged[0]);
}

TEST(Alternation, NeverDecreases) {
    Rng rng{9};
    for (int i = 0; i < 50; ++i) {
        const Eigen::MatrixXd w = Eigen::MatrixXd::Random(5, 4);
        std::vector<Vec3> v{rng.sphere(), rng.sphere(), rng.sphere(), rng.sphere()};
        double last = -1e300;
        for (int k = 0; k < 30; ++k) {
            const auto s = best_states(w, v);
            EXPECT_GE(s.value, last - 1e-12);
            const auto mr = best_measurements(w, s.states);
            for (int y = 0; y < 4; ++y)
                if (!mr.flagged[y]) v[y] = mr.directions[y];
            EXPECT_GE(mr.value, s.value - 1e-12);
            last = mr.value;
        }
    }
}

TEST(DegenerateCheck, ZeroColumnSumsPreferGenuine) {
    Rng rng{10};
    Eigen::MatrixXd w = Eigen::MatrixXd::Random(4, 3);
    w.rowwise() -= w.colwise().mean();
    for (int i = 0; i < 20; ++i) {
        std::vector<Vec3> m{rng.sphere(), rng.sphere(), rng.sphere(), rng.sphere()};
        for (const auto &r : degenerate_check(w, m)) {
            EXPECT_TRUE(r.genuine_preferred());
            EXPECT_NEAR(r.degenerate, 0.0, 1e-14);
        }
    }
}

TEST(DegenerateCheck, ParallelStatesTie) {
    Eigen::MatrixXd w(2, 1);
    w << 1.0, 1.0;
    const std::vector<Vec3> m{Vec3(0, 0, 1), Vec3(0, 0, 1)};
    const auto r = degenerate_check(w, m)[0];
    EXPECT_TRUE(r.tie);
    EXPECT_TRUE(r.genuine_preferred());
}

TEST(DegenerateCheck, UmbrellaNearThreeStillGenuine) {
    const auto m = umbrella_states(2.9);
    for (const auto &r : degenerate_check(umbrella_matrix(2.9), m)) EXPECT_GT(r.margin, 0.0);
}

TEST(Stationarity, UmbrellaOptimumAndPerturbation) {
    const auto p = umbrella_params(1.0);
    const auto gram = optimal_gram_4x3(p);
    EXPECT_LE(stationarity_residual(p, gram), 1e-10);
    Eigen::MatrixXd g = gram.entries();
    g(0, 1) += 0.1;
    g(1, 0) += 0.1;
    EXPECT_GT(stationarity_residual(p, GramMatrix(g)), 1e-3);
}

TEST(Stationarity, GramMatchesUmbrellaDirections) {
    for (double c : {0.5, 1.0, 2.0, 2.5}) {
        const auto gram = optimal_gram_4x3(umbrella_params(c));
        const auto v = umbrella_measurements(c);
        for (int a = 0; a < 3; ++a)
            for (int b = 0; b < 3; ++b) EXPECT_NEAR(gram(a, b), v[a].dot(v[b]), 1e-12) << c;
    }
}

TEST(UNorms, GramAgreesWithDirectSum) {
    Rng rng{11};
    for (int i = 0; i < 50; ++i) {
        const Eigen::MatrixXd w = Eigen::MatrixXd::Random(4, 3);
        std::vector<Vec3> v{rng.sphere(), rng.sphere(), rng.sphere()};
        const auto from_gram = u_norms_from_gram(w, GramMatrix::of(v));
        const auto direct = best_states(w, v).u_norm;
        for (int x = 0; x < 4; ++x) EXPECT_NEAR(from_gram[x], direct[x], 1e-12);
    }
}

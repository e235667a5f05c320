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

#include <numbers>

#include "fixtures.hpp"
#include "pmst/evaluate.hpp"
#include "pmst/simulator.hpp"
#include "pmst/witness.hpp"

using namespace pmst;
using namespace pmst::testing;

namespace {

constexpr double kPi = std::numbers::pi;

double unitarity_error(const Eigen::Matrix2cd &u) {
    return (u.adjoint() * u - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff();
}

} // namespace

TEST(PrepAmplitudes, Poles) {
    auto a = prep_amplitudes(Vec3(0, 0, 1));
    EXPECT_NEAR(std::abs(a.alpha - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(a.beta), 0.0, 1e-15);
    a = prep_amplitudes(Vec3(0, 0, -1));
    EXPECT_NEAR(std::abs(a.alpha), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(a.beta - 1.0), 0.0, 1e-15);
}

TEST(PrepAmplitudes, Equator) {
    const auto a = prep_amplitudes(Vec3(1, 0, 0));
    EXPECT_NEAR(std::abs(a.alpha - 1 / std::sqrt(2.0)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(a.beta - 1 / std::sqrt(2.0)), 0.0, 1e-15);
    EXPECT_THROW(prep_amplitudes(Vec3(0.5, 0, 0)), Error);
}

TEST(MeasAngles, Examples) {
    auto a = meas_angles(Vec3(0, 0, 1));
    EXPECT_EQ(a.theta, 0.0);
    EXPECT_EQ(a.phi, 0.0);
    a = meas_angles(Vec3(1, 0, 0));
    EXPECT_NEAR(a.theta, kPi / 2, 1e-15);
    EXPECT_NEAR(a.phi, 0.0, 1e-15);
    a = meas_angles(Vec3(0, -1, 0));
    EXPECT_NEAR(a.theta, kPi / 2, 1e-15);
    EXPECT_NEAR(a.phi, 3 * kPi / 2, 1e-15);
    a = meas_angles(Vec3(0, 0, -1));
    EXPECT_NEAR(a.theta, kPi, 1e-15);
    EXPECT_EQ(a.phi, 0.0);
    EXPECT_THROW(meas_angles(Vec3(0, 0, 2)), Error);
}

TEST(Unitaries, AreUnitary) {
    Rng rng{41};
    for (int i = 0; i < 2000; ++i) {
        EXPECT_LE(unitarity_error(prep_unitary(prep_amplitudes(rng.sphere()))), 1e-12);
        EXPECT_LE(unitarity_error(proj_unitary(meas_angles(rng.sphere()))), 1e-12);
    }
    EXPECT_LE(unitarity_error(prep_unitary(prep_amplitudes(Vec3(0, 0, -1)))), 1e-12);
    EXPECT_LE(unitarity_error(proj_unitary(meas_angles(Vec3(0, 0, -1)))), 1e-12);
}

TEST(Unitaries, PrepMapsGroundStateToTarget) {
    Rng rng{42};
    for (int i = 0; i < 200; ++i) {
        const Vec3 m = rng.sphere();
        const Eigen::Vector2cd psi = prep_unitary(prep_amplitudes(m)).col(0);
        // Bloch vector of the prepared state.
        const Complex a = psi(0), b = psi(1);
        const Vec3 back(2 * (std::conj(a) * b).real(), 2 * (std::conj(a) * b).imag(), std::norm(a) - std::norm(b));
        EXPECT_LE((back - m).norm(), 1e-12);
    }
}

TEST(CircuitProbabilities, Examples) {
    PMScenario sc = PMScenario::projective(std::vector<Vec3>{Vec3(0, 0, 1)}, std::vector<Vec3>{Vec3(0, 0, 1)});
    auto p = circuit_probabilities(build_circuit_spec(sc, 1).at(0, 0));
    EXPECT_NEAR(p.first, 1.0, 1e-15);
    sc = PMScenario::projective(std::vector<Vec3>{Vec3(0, 0, 1)}, std::vector<Vec3>{Vec3(1, 0, 0)});
    p = circuit_probabilities(build_circuit_spec(sc, 1).at(0, 0));
    EXPECT_NEAR(p.first, 0.5, 1e-15);
    const auto spec = build_circuit_spec(umbrella(1.0).scenario(), 1);
    // m_1 . v_1 = 4 c r = 1/sqrt(3) at c = 1.
    p = circuit_probabilities(spec.at(0, 0));
    EXPECT_NEAR(p.first, (1 + 1 / std::sqrt(3.0)) / 2, 1e-12);
    EXPECT_NEAR(p.second, (1 - 1 / std::sqrt(3.0)) / 2, 1e-12);
}

TEST(CircuitProbabilities, MatchBornRuleOnRandomPairs) {
    Rng rng{43};
    double worst = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const Vec3 m = rng.sphere(), v = rng.sphere();
        const PMScenario sc = PMScenario::projective(std::vector<Vec3>{m}, std::vector<Vec3>{v});
        const auto p = circuit_probabilities(build_circuit_spec(sc, 1).at(0, 0));
        const auto q = born_binary(QubitState(m), BinaryMeasurement::projective(v));
        worst = std::max(worst, std::abs(p.first - q[0]));
    }
    EXPECT_LE(worst, 1e-12);
}

TEST(SampleCounts, CertainOutcome) {
    const PMScenario sc = PMScenario::projective(std::vector<Vec3>{Vec3(1, 0, 0)}, std::vector<Vec3>{Vec3(1, 0, 0)});
    const auto t = sample_counts(sc, 1000, 5);
    EXPECT_EQ(t.count(0, 0, 0), 1000);
    EXPECT_EQ(t.count(0, 0, 1), 0);
}

TEST(SampleCounts, FairCoinBand) {
    const PMScenario sc = PMScenario::projective(std::vector<Vec3>{Vec3(0, 0, 1)}, std::vector<Vec3>{Vec3(1, 0, 0)});
    const auto t = sample_counts(sc, 1000000, 6);
    EXPECT_NEAR(t.frequency(0, 0, 0), 0.5, 0.0015);
}

TEST(SampleCounts, DeterministicForSeed) {
    const auto sc = umbrella(1.0).scenario();
    EXPECT_EQ(sample_counts(sc, 8192, 7), sample_counts(sc, 8192, 7));
    EXPECT_FALSE(sample_counts(sc, 8192, 7) == sample_counts(sc, 8192, 8));
}

TEST(SampleCounts, CellMarginals) {
    const auto b = umbrella(1.5);
    const auto spec = build_circuit_spec(b.scenario(), 64);
    const Eigen::MatrixXd p0 = outcome_probabilities(spec);
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(4, 3);
    const int reps = 10000;
    for (int r = 0; r < reps; ++r) sum += sample_counts(spec, 1000 + r).frequencies();
    for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 3; ++y) {
            const double se = std::sqrt(p0(x, y) * (1 - p0(x, y)) / (64.0 * reps));
            EXPECT_NEAR(sum(x, y) / reps, p0(x, y), 4 * se + 1e-15);
        }
}

TEST(Estimate, ExactProbabilitiesGiveWitness) {
    for (double c : {0.0, 1.0, 2.5}) {
        const auto b = umbrella(c);
        const auto spec = build_circuit_spec(b.scenario(), 8192);
        const auto est = estimate_from_probabilities(b.witness, outcome_probabilities(spec), 8192);
        EXPECT_NEAR(est.value, eval_witness(b.witness, b.scenario()), 1e-12);
        EXPECT_NEAR(est.sigma, sigma_analytic(c, 8192), 1e-12) << c;
    }
}

TEST(Estimate, FullyDepolarizedIsCentered) {
    const auto b = umbrella(1.0);
    const auto t = sample_counts(b.scenario(), 8192, 9, 0.0);
    const auto est = estimate_witness(b.witness, t);
    EXPECT_LE(std::abs(est.value), 4 * est.sigma);
}

TEST(Estimate, DimensionMismatch) {
    const auto t = sample_counts(umbrella(1.0).scenario(), 10, 1);
    EXPECT_THROW(estimate_witness(WitnessMatrix(Eigen::MatrixXd::Zero(3, 3)), t), Error);
}

TEST(SigmaAnalytic, Examples) {
    EXPECT_DOUBLE_EQ(sigma_analytic(0.0, 8192), 0.0078125);
    EXPECT_NEAR(sigma_analytic(1.0, 8192), 0.25 * std::sqrt(64.0 / 49152.0), 1e-15);
    EXPECT_NEAR(sigma_analytic(1.0, 8192), 0.0090211, 1e-7);
    EXPECT_NEAR(sigma_analytic(2.0, 4 * 8192), sigma_analytic(2.0, 8192) / 2, 1e-15);
    EXPECT_THROW(sigma_analytic(4.0, 10), Error);
}

TEST(StatTable, RejectsUnequalShots) {
    StatTable t(1, 2);
    t.set_count(0, 0, 0, 5);
    t.set_count(0, 0, 1, 5);
    t.set_count(0, 1, 0, 3);
    t.set_count(0, 1, 1, 5);
    EXPECT_THROW(t.shots(), Error);
}

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

#include <algorithm>

#include "fixtures.hpp"
#include "pmst/bounds.hpp"
#include "pmst/evaluate.hpp"
#include "pmst/real_family.hpp"
#include "pmst/seesaw.hpp"
#include "pmst/selftest.hpp"
#include "pmst/witness.hpp"

using namespace pmst;
using namespace pmst::testing;

namespace {

double closed_form_classical(double c) {
    return c <= 1.0 ? (c + 5.0) / std::sqrt(3.0 * (3.0 + c * c)) : (c + 1.0) * std::sqrt(3.0 / (3.0 + c * c));
}

BoundOptions quick(int starts, std::uint64_t seed = 1) {
    BoundOptions o;
    o.starts = starts;
    o.seed = seed;
    return o;
}

} // namespace

TEST(ClassicalBound, UmbrellaExamples) {
    EXPECT_NEAR(classical_bound(umbrella(1.0).witness).value, std::sqrt(3.0), 1e-12);
    EXPECT_NEAR(classical_bound(umbrella(0.0).witness).value, 5.0 / 3.0, 1e-12);
    EXPECT_NEAR(classical_bound(umbrella(3.0).witness).value, 2.0, 1e-12);
}

TEST(ClassicalBound, MatchesClosedFormOnUmbrella) {
    for (double c = 0.0; c <= 3.0; c += 0.0625) {
        const double v = classical_bound(umbrella(c).witness).value;
        EXPECT_NEAR(v, closed_form_classical(c), 1e-12) << c;
        EXPECT_NEAR(umbrella_classical_bound(c), closed_form_classical(c), 1e-15) << c;
    }
}

TEST(ClassicalBound, MatchesBruteForce) {
    for (int i = 0; i < 40; ++i) {
        std::srand(100 + i);
        const Eigen::MatrixXd w = Eigen::MatrixXd::Random(3 + i % 4, 2 + i % 3);
        const auto r = classical_bound(WitnessMatrix(w));
        EXPECT_NEAR(r.value, classical_oracle(w), 1e-12);
        EXPECT_NEAR(eval_witness(WitnessMatrix(w), r.argmax), r.value, 1e-12);
    }
}

TEST(ClassicalBound, SizeLimit) {
    try {
        classical_bound(WitnessMatrix(Eigen::MatrixXd::Ones(12, 8)));
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::SizeLimit);
    }
}

TEST(QuantumBound, UmbrellaComplexIsTwo) {
    for (double c : {0.25, 1.0, 2.0}) {
        const auto r = quantum_bound(umbrella(c).witness, Model::ComplexQubit, quick(16));
        EXPECT_NEAR(r.value, 2.0, 1e-9) << c;
        EXPECT_NEAR(eval_witness(umbrella(c).witness, r.argmax), r.value, 1e-10);
        EXPECT_GT(r.converged_fraction, 0.0);
        EXPECT_EQ(r.starts_used, 16);
    }
}

TEST(QuantumBound, UmbrellaRealMatchesTable) {
    EXPECT_NEAR(quantum_bound(umbrella(1.0).witness, Model::RealQubit, quick(64)).value, 1.8683, 2e-3);
    EXPECT_NEAR(quantum_bound(umbrella(0.5).witness, Model::RealQubit, quick(64)).value, 1.9567, 2e-3);
}

TEST(QuantumBound, RealArgmaxIsCoplanar) {
    const auto r = quantum_bound(umbrella(1.5).witness, Model::RealQubit, quick(32));
    for (const auto &s : r.argmax.states) EXPECT_EQ(s.bloch()(1), 0.0);
    for (const auto &m : r.argmax.measurements) EXPECT_EQ(m.direction()(1), 0.0);
}

TEST(QuantumBound, DeterministicForSeed) {
    const auto w = umbrella(1.25).witness;
    const auto a = quantum_bound(w, Model::RealQubit, quick(24, 9));
    const auto b = quantum_bound(w, Model::RealQubit, quick(24, 9));
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.converged_fraction, b.converged_fraction);
    EXPECT_EQ(a.argmax.state_vectors(), b.argmax.state_vectors());
}

TEST(QuantumBound, OrderingAcrossModels) {
    Rng rng{31};
    for (int i = 0; i < 15; ++i) {
        Eigen::MatrixXd w(4, 3);
        for (int k = 0; k < w.size(); ++k) w(k) = 2 * rng.uniform() - 1;
        const WitnessMatrix wm(w);
        const double c = classical_bound(wm).value;
        const double r = quantum_bound(wm, Model::RealQubit, quick(64)).value;
        const double q = quantum_bound(wm, Model::ComplexQubit, quick(32)).value;
        EXPECT_LE(c, r + 1e-9);
        EXPECT_LE(r, q + 1e-9);
    }
}

TEST(QuantumBound, PermutationInvariant) {
    Rng rng{32};
    Eigen::MatrixXd w(5, 3);
    for (int k = 0; k < w.size(); ++k) w(k) = 2 * rng.uniform() - 1;
    Eigen::PermutationMatrix<Eigen::Dynamic> pr(5), pc(3);
    pr.indices() << 3, 0, 4, 1, 2;
    pc.indices() << 2, 0, 1;
    const Eigen::MatrixXd wp = pr * w * pc;
    const double a = quantum_bound(WitnessMatrix(w), Model::ComplexQubit, quick(64)).value;
    const double b = quantum_bound(WitnessMatrix(wp), Model::ComplexQubit, quick(64)).value;
    EXPECT_NEAR(a, b, 1e-9);
}

TEST(QuantumBound, DegenerateSettingsCanWin) {
    // A column with a large sum is best answered by a fixed outcome.
    Eigen::MatrixXd w(2, 2);
    w << 1, 1, 1, -1;
    const auto with = quantum_bound(WitnessMatrix(w), Model::ComplexQubit, quick(8));
    BoundOptions genuine = quick(8);
    genuine.allow_degenerate = false;
    const auto without = quantum_bound(WitnessMatrix(w), Model::ComplexQubit, genuine);
    EXPECT_NEAR(with.value, 4.0, 1e-12);
    EXPECT_LT(without.value, with.value);
    EXPECT_TRUE(with.degenerate_used());
}

TEST(Seesaw, TraceIsMonotone) {
    Rng rng{33};
    SeesawOptions o;
    o.record_trace = true;
    o.polish = false;
    for (int i = 0; i < 30; ++i) {
        Eigen::MatrixXd w(6, 4);
        for (int k = 0; k < w.size(); ++k) w(k) = 2 * rng.uniform() - 1;
        std::vector<Vec3> v0{rng.sphere(), rng.sphere(), rng.sphere(), rng.sphere()};
        const auto run = seesaw(w, v0, Model::ComplexQubit, o);
        ASSERT_FALSE(run.trace.empty());
        for (std::size_t k = 1; k < run.trace.size(); ++k) EXPECT_GE(run.trace[k], run.trace[k - 1] - 1e-12);
    }
}

TEST(Seesaw, PolishDoesNotLowerValue) {
    Rng rng{34};
    for (int i = 0; i < 20; ++i) {
        Eigen::MatrixXd w(4, 3);
        for (int k = 0; k < w.size(); ++k) w(k) = 2 * rng.uniform() - 1;
        std::vector<Vec3> v0{rng.sphere(), rng.sphere(), rng.sphere()};
        SeesawOptions plain;
        plain.polish = false;
        const auto a = seesaw(w, v0, Model::ComplexQubit, plain);
        const auto b = seesaw(w, v0, Model::ComplexQubit);
        EXPECT_GE(b.value, a.value - 1e-12);
    }
}

TEST(RealFamily, ValuesMatchTable) {
    EXPECT_NEAR(real_family_value(1.0), 1.8683, 5e-5);
    EXPECT_NEAR(real_family_value(2.0), 1.9795, 5e-5);
    EXPECT_NEAR(real_family_value(0.25), 1.9881, 5e-5);
    EXPECT_NEAR(real_family_value(0.5), 1.9567, 1e-4);
}

TEST(RealFamily, BelowTwoInsideInterval) {
    for (double c = 0.125; c < 3.0; c += 0.125) EXPECT_LT(real_family_value(c), 2.0 - 1e-6) << c;
}

TEST(RealFamily, StatesAreCoplanarUnitVectors) {
    for (double c = 0.0; c <= 3.0; c += 0.25) {
        const auto f = real_family(c);
        for (const auto &m : f.states) {
            EXPECT_EQ(m(1), 0.0);
            EXPECT_NEAR(m.norm(), 1.0, 1e-12);
        }
    }
}

TEST(RealFamily, BranchesAgreeAtOne) {
    const auto a = real_family_small(1.0), b = real_family_large(1.0);
    const auto w = umbrella_matrix(1.0);
    const auto va = best_measurements(w, a.states).value, vb = best_measurements(w, b.states).value;
    EXPECT_NEAR(va, vb, 1e-12);
    // Same multiset of states up to relabeling (and a global reflection).
    auto gram_spectrum = [](const std::array<Vec3, 4> &s) {
        Eigen::Matrix4d g;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) g(i, j) = s[i].dot(s[j]);
        Eigen::Vector4d e = Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d>(g).eigenvalues();
        return e;
    };
    EXPECT_LE((gram_spectrum(a.states) - gram_spectrum(b.states)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(RealFamily, EndPointAtThree) {
    const auto f = real_family(3.0);
    EXPECT_NEAR(f.states[1].dot(f.states[2]), 1.0, 1e-12);
    EXPECT_NEAR(f.states[2].dot(f.states[3]), 1.0, 1e-12);
    EXPECT_NEAR(f.states[0].dot(f.states[1]), -1.0, 1e-12);
}

TEST(RealFamily, OutOfRange) {
    EXPECT_THROW(real_family(3.01), Error);
    EXPECT_THROW(real_family_value(-0.5), Error);
}

TEST(RealGrid, AgreesWithMultiStart) {
    for (double c : {0.5, 1.0, 2.5}) {
        const auto w = umbrella(c).witness;
        const auto g = real_grid_bound(w, 2e-3);
        const double ms = quantum_bound(w, Model::RealQubit, quick(64)).value;
        EXPECT_NEAR(g.polished_value, ms, 1e-9) << c;
        EXPECT_GE(g.upper_estimate, ms - 1e-12);
        EXPECT_LE(g.grid_value, g.polished_value + 1e-12);
    }
}

TEST(Selftest, RandomFourByThreePasses) {
    Rng rng{35};
    SelftestOptions o;
    o.trials = 24;
    o.allow_degenerate = false;
    for (int i = 0; i < 5; ++i) {
        const auto povm = random_extremal_povm(rng);
        FourByThreeOptions fo;
        fo.reject_degenerate = false;
        const auto b = build_4x3(negated(povm.vectors()), fo);
        const auto rep = verify_selftest(b.witness, b.scenario(), o);
        EXPECT_TRUE(rep.passed) << i;
        EXPECT_LT(rep.worst_deviation, 1e-5);
        ASSERT_TRUE(rep.povm);
        for (int x = 0; x < 4; ++x) EXPECT_NEAR(rep.povm->weights()[x], povm.weights()[x], 1e-9);
    }
}

TEST(Selftest, CoplanarStatesFlagNonExtremal) {
    const auto m = coplanar_quad();
    FourByThreeOptions fo;
    fo.p = coplanar_quad_p();
    fo.reject_degenerate = false;
    const auto b = build_4x3(m, fo);
    SelftestOptions o;
    o.trials = 16;
    o.allow_degenerate = false;
    const auto rep = verify_selftest(b.witness, b.scenario(), o);
    EXPECT_FALSE(rep.povm.has_value());
    const bool flagged = std::any_of(rep.notes.begin(), rep.notes.end(),
                                     [](const std::string &n) { return n.find("NonExtremal") != std::string::npos; });
    EXPECT_TRUE(flagged);
}

TEST(Selftest, SuboptimalTargetRejected) {
    const auto b = umbrella(1.0);
    auto sc = b.scenario();
    sc.states[0] = QubitState(Vec3(1, 0, 0));
    try {
        verify_selftest(b.witness, sc);
        FAIL();
    } catch (const Error &e) {
        EXPECT_EQ(e.code(), ErrorCode::TargetSuboptimal);
    }
}

TEST(Selftest, UmbrellaPasses) {
    const auto b = umbrella(1.0);
    SelftestOptions o;
    o.trials = 16;
    const auto rep = verify_selftest(b.witness, b.scenario(), o);
    EXPECT_TRUE(rep.passed);
    EXPECT_NEAR(rep.bound.value, 2.0, 1e-9);
}

TEST(EnsureGenuine, DoublesWhenFixedSettingsWin) {
    Rng rng{36};
    int doubled = 0;
    for (int i = 0; i < 10; ++i) {
        const auto povm = random_extremal_povm(rng);
        FourByThreeOptions fo;
        fo.reject_degenerate = false;
        const auto b = ensure_genuine_optimum(build_4x3(negated(povm.vectors()), fo), quick(16));
        const double q = quantum_bound(b.witness, Model::ComplexQubit, quick(16)).value;
        EXPECT_NEAR(q, b.ideal_value, 1e-7);
        doubled += b.doubled;
    }
    EXPECT_GT(doubled, 0);
}

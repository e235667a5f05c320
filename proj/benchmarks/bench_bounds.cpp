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

#include <benchmark/benchmark.h>

#include "pmst/bounds.hpp"
#include "pmst/random.hpp"
#include "pmst/real_family.hpp"
#include "pmst/seesaw.hpp"
#include "pmst/witness.hpp"

namespace {

using namespace pmst;

void BM_ClassicalBoundUmbrella(benchmark::State &state) {
    const auto w = umbrella(1.0).witness;
    for (auto _ : state) benchmark::DoNotOptimize(classical_bound(w).value);
}
BENCHMARK(BM_ClassicalBoundUmbrella);

// Enumeration cost grows as 2^(M_m + 2 M_v).
void BM_ClassicalBoundRows(benchmark::State &state) {
    const auto rows = static_cast<Eigen::Index>(state.range(0));
    Eigen::MatrixXd w = Eigen::MatrixXd::Random(rows, 3);
    const WitnessMatrix wm(w);
    for (auto _ : state) benchmark::DoNotOptimize(classical_bound(wm).value);
}
BENCHMARK(BM_ClassicalBoundRows)->DenseRange(4, 16, 4);

void BM_SingleSeesaw(benchmark::State &state) {
    const auto w = umbrella(1.5).witness.coefficients();
    Rng rng{7};
    SeesawOptions opts;
    opts.polish = state.range(0) != 0;
    for (auto _ : state) {
        std::vector<Vec3> v0{rng.sphere(), rng.sphere(), rng.sphere()};
        benchmark::DoNotOptimize(seesaw(w, v0, Model::ComplexQubit, opts).value);
    }
}
BENCHMARK(BM_SingleSeesaw)->Arg(0)->Arg(1)->ArgName("polish");

void BM_QuantumBound(benchmark::State &state) {
    const auto w = umbrella(1.0).witness;
    const auto model = state.range(0) ? Model::RealQubit : Model::ComplexQubit;
    for (auto _ : state) benchmark::DoNotOptimize(quantum_bound(w, model).value);
    state.SetLabel(std::string(model_name(model)));
}
BENCHMARK(BM_QuantumBound)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_FourBySixBound(benchmark::State &state) {
    const auto w = build_4x6(sic_povm()).witness;
    for (auto _ : state) benchmark::DoNotOptimize(quantum_bound(w, Model::ComplexQubit).value);
}
BENCHMARK(BM_FourBySixBound)->Unit(benchmark::kMillisecond);

void BM_RealGrid(benchmark::State &state) {
    const auto w = umbrella(2.0).witness;
    const double h = 1.0 / static_cast<double>(state.range(0));
    for (auto _ : state) benchmark::DoNotOptimize(real_grid_bound(w, h).upper_estimate);
}
BENCHMARK(BM_RealGrid)->Arg(250)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_RealFamilyValue(benchmark::State &state) {
    double c = 0.0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(real_family_value(c));
        c = c < 2.99 ? c + 0.01 : 0.0;
    }
}
BENCHMARK(BM_RealFamilyValue);

} // namespace

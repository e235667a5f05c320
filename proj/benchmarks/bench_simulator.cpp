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

#include "pmst/io.hpp"
#include "pmst/simulator.hpp"
#include "pmst/witness.hpp"

namespace {

using namespace pmst;

void BM_SampleCounts(benchmark::State &state) {
    const auto spec = build_circuit_spec(umbrella(1.0).scenario(), state.range(0));
    std::uint64_t seed = 1;
    for (auto _ : state) benchmark::DoNotOptimize(sample_counts(spec, seed++));
    state.SetItemsProcessed(state.iterations() * 12 * state.range(0));
}
BENCHMARK(BM_SampleCounts)->Arg(1024)->Arg(8192)->Arg(65536);

void BM_EstimateWitness(benchmark::State &state) {
    const auto b = umbrella(1.0);
    const auto table = sample_counts(b.scenario(), 8192, 3);
    for (auto _ : state) benchmark::DoNotOptimize(estimate_witness(b.witness, table).value);
}
BENCHMARK(BM_EstimateWitness);

void BM_BuildCircuitSpec(benchmark::State &state) {
    const auto sc = build_4x6(sic_povm()).scenario();
    for (auto _ : state) benchmark::DoNotOptimize(build_circuit_spec(sc, 8192).entries.size());
}
BENCHMARK(BM_BuildCircuitSpec);

void BM_CountsCsvRoundTrip(benchmark::State &state) {
    const auto table = sample_counts(umbrella(1.0).scenario(), 8192, 3);
    for (auto _ : state) benchmark::DoNotOptimize(counts_from_csv(counts_to_csv(table)).shots());
}
BENCHMARK(BM_CountsCsvRoundTrip);

} // namespace

// Copyright 2026 The LOCC Estimation Authors
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

#include "locc/builtin.h"
#include "locc/estimator.h"
#include "locc/montecarlo.h"
#include "locc/optimizer.h"

using namespace locc;

namespace {

StrategyTree random_tree(int n) {
    Xoshiro256 rng(17);
    std::vector<BlochVector> dirs((std::size_t{1} << n) - 1);
    for (auto &d : dirs) {
        d = sample_state(Geometry::Full, rng);
    }
    return StrategyTree(Geometry::Full, n, std::move(dirs));
}

void BM_exact_tree(benchmark::State &state) {
    const StrategyTree t = random_tree(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(fidelity_exact_tree(t, GuessRule::optimal()).fidelity);
    }
}
BENCHMARK(BM_exact_tree)->DenseRange(2, 12, 2);

void BM_aggregated(benchmark::State &state) {
    const FixedStrategy f = make_fixed_axes(Geometry::Full, static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(fidelity_exact_aggregated(f, GuessRule::optimal()).fidelity);
    }
}
BENCHMARK(BM_aggregated)->Arg(2)->Arg(4)->Arg(8)->Arg(16)->Unit(benchmark::kMillisecond);

void BM_optimize(benchmark::State &state) {
    OptimizationConfig cfg;
    cfg.threads = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            optimize_tree(Geometry::Full, static_cast<int>(state.range(0)), GuessRule::optimal(), cfg).fidelity);
    }
}
BENCHMARK(BM_optimize)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_simulate(benchmark::State &state) {
    const StrategyTree t = optimal_n3_tree();
    McConfig cfg;
    cfg.samples = 100000;
    cfg.threads = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_fidelity(t, GuessRule::optimal(), cfg).mean);
    }
    state.SetItemsProcessed(state.iterations() * cfg.samples);
}
BENCHMARK(BM_simulate)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();

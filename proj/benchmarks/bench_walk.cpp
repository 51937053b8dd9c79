// Copyright 2026 The bosonwalk authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <benchmark/benchmark.h>

#include "bosonwalk/optics.hpp"
#include "bosonwalk/virtual_walk.hpp"
#include "bosonwalk/walk.hpp"

namespace {

using namespace bosonwalk;

void BM_SingleWalkerLine(benchmark::State &state) {
    const int steps = static_cast<int>(state.range(0));
    Graph g = Graph::line(2 * steps + 1);
    CoinAssignment coins = hadamard_coins(g);
    FockState initial =
        product_state(g, std::vector<WalkerWavelet>{WalkerWavelet{steps, symmetric_coin(2)}});
    WalkSchedule schedule = repeat_schedule(coins, steps);
    for (auto _ : state) {
        benchmark::DoNotOptimize(evolve(g, initial, schedule));
    }
}
BENCHMARK(BM_SingleWalkerLine)->Arg(25)->Arg(50)->Arg(100);

void BM_TwoWalkerLine(benchmark::State &state) {
    const int steps = static_cast<int>(state.range(0));
    Graph g = Graph::line(15);
    CoinAssignment coins = hadamard_coins(g);
    FockState initial = product_state(
        g,
        std::vector<WalkerWavelet>{WalkerWavelet{6, symmetric_coin(2)}, WalkerWavelet{7, symmetric_coin(2)}});
    WalkSchedule schedule = repeat_schedule(coins, steps);
    for (auto _ : state) {
        benchmark::DoNotOptimize(evolve(g, initial, schedule));
    }
}
BENCHMARK(BM_TwoWalkerLine)->Arg(3)->Arg(7);

void BM_VirtualWalker(benchmark::State &state) {
    const int steps = static_cast<int>(state.range(0));
    Graph g = Graph::line(15);
    VirtualGraph vg(g, 2);
    CoinAssignment coins = hadamard_coins(g);
    VirtualWalkInput input;
    input.vertex = {6, 7};
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate_virtual(vg, DefectPattern{}, input, coins, steps));
    }
}
BENCHMARK(BM_VirtualWalker)->Arg(3)->Arg(7);

void BM_ReckDecompose(benchmark::State &state) {
    const int dim = static_cast<int>(state.range(0));
    Graph g = Graph::complete_with_loops(dim);
    CoinAssignment coins = dft_coins(g);
    Eigen::MatrixXcd u = coins.matrices[0];
    for (auto _ : state) {
        benchmark::DoNotOptimize(reck_decompose(u));
    }
}
BENCHMARK(BM_ReckDecompose)->Arg(4)->Arg(8)->Arg(16);

void BM_NetworkRoundTrip(benchmark::State &state) {
    OpticalNetwork net(9);
    Eigen::Matrix2cd h;
    h << 1.0, 1.0, 1.0, -1.0;
    h /= std::sqrt(2.0);
    net.append(Beamsplitter{4, 7, h});
    net.append(PhaseShift{2, 0.3});
    net.append(Beamsplitter{0, 5, h});
    for (auto _ : state) {
        CompiledWalk compiled = compile_network_to_walk(net);
        benchmark::DoNotOptimize(compile_walk_to_network(compiled.graph, compiled.schedule));
    }
}
BENCHMARK(BM_NetworkRoundTrip);

}  // namespace

BENCHMARK_MAIN();

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

#include <random>

#include <benchmark/benchmark.h>

#include "bosonwalk/fock.hpp"

namespace {

Eigen::MatrixXcd random_matrix(int n, uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    Eigen::MatrixXcd m(n, n);
    for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
            m(r, c) = bosonwalk::Complex(normal(gen), normal(gen));
        }
    }
    return m;
}

void BM_Permanent(benchmark::State &state) {
    const int n = static_cast<int>(state.range(0));
    Eigen::MatrixXcd m = random_matrix(n, 17);
    for (auto _ : state) {
        benchmark::DoNotOptimize(bosonwalk::permanent(m));
    }
}
BENCHMARK(BM_Permanent)->Arg(4)->Arg(8)->Arg(12)->Arg(16);

void BM_PermanentAmplitude(benchmark::State &state) {
    const int modes = 8;
    const int photons = static_cast<int>(state.range(0));
    Eigen::MatrixXcd m = random_matrix(modes, 23);
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
    Eigen::MatrixXcd u = qr.householderQ();
    std::vector<bosonwalk::ModeIndex> input_modes;
    for (int k = 0; k < photons; ++k) {
        input_modes.push_back(k % modes);
    }
    bosonwalk::Occupation input = bosonwalk::Occupation::from_modes(input_modes, modes);
    for (auto _ : state) {
        benchmark::DoNotOptimize(bosonwalk::permanent_amplitude(u, input, input));
    }
}
BENCHMARK(BM_PermanentAmplitude)->Arg(2)->Arg(4)->Arg(6);

}  // namespace

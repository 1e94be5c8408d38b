// Copyright 2026 The quditsim Authors
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

#include "quditsim/grover.hpp"
#include "quditsim/statevector.hpp"

using namespace quditsim;

namespace {

StateVector make_state(int wires) {
    std::vector<int> dims(static_cast<std::size_t>(wires), 4);
    std::vector<int> zeros(static_cast<std::size_t>(wires), 0);
    StateVector state = prepare_basis(dims, zeros);
    for (std::size_t w = 0; w < dims.size(); ++w) {
        apply(state, SingleOp{w, SingleKind::F, 2});
    }
    return state;
}

void BM_ApplyCinc(benchmark::State &bench) {
    StateVector state = make_state(static_cast<int>(bench.range(0)));
    const CincOp op{0, 1, state.dims.size() - 1, 3, +1};
    for (auto _ : bench) {
        apply(state, op);
        benchmark::DoNotOptimize(state.amps.data());
    }
    bench.SetItemsProcessed(static_cast<std::int64_t>(bench.iterations()) *
                            static_cast<std::int64_t>(state.size()));
}

void BM_ApplyFourier(benchmark::State &bench) {
    StateVector state = make_state(static_cast<int>(bench.range(0)));
    const SingleOp op{state.dims.size() / 2, SingleKind::F, 2};
    for (auto _ : bench) {
        apply(state, op);
        benchmark::DoNotOptimize(state.amps.data());
    }
    bench.SetItemsProcessed(static_cast<std::int64_t>(bench.iterations()) *
                            static_cast<std::int64_t>(state.size()));
}

void BM_GroverIteration(benchmark::State &bench) {
    const int n = static_cast<int>(bench.range(0));
    std::vector<int> marked(static_cast<std::size_t>(n), 1);
    const auto problem = grover::make_problem(n, 2, marked, 1);
    const Circuit oracle = grover::build_oracle(problem);
    const Circuit diffusion = grover::build_diffusion_circuit(n, 2);
    StateVector state = make_state(n);
    for (auto _ : bench) {
        for (const GateOp &op : oracle.ops) {
            apply(state, op);
        }
        for (const GateOp &op : diffusion.ops) {
            apply(state, op);
        }
        benchmark::DoNotOptimize(state.amps.data());
    }
}

}  // namespace

BENCHMARK(BM_ApplyCinc)->Arg(6)->Arg(8)->Arg(10);
BENCHMARK(BM_ApplyFourier)->Arg(6)->Arg(8)->Arg(10);
BENCHMARK(BM_GroverIteration)->Arg(4)->Arg(6)->Arg(8);

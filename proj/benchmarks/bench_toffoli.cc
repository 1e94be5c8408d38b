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

#include "quditsim/circuit.hpp"
#include "quditsim/toffoli.hpp"

using namespace quditsim;

namespace {

void BM_Decompose(benchmark::State &bench) {
    const int n = static_cast<int>(bench.range(0));
    for (auto _ : bench) {
        benchmark::DoNotOptimize(toffoli::decompose(n, 2));
    }
}

void BM_OptimizeCancel(benchmark::State &bench) {
    const Circuit circuit = toffoli::decompose(static_cast<int>(bench.range(0)), 2);
    for (auto _ : bench) {
        benchmark::DoNotOptimize(toffoli::optimize_cancel(circuit));
    }
}

void BM_VerifyEquivalence(benchmark::State &bench) {
    const int n = static_cast<int>(bench.range(0));
    for (auto _ : bench) {
        benchmark::DoNotOptimize(toffoli::verify_equivalence(n, 2));
    }
}

void BM_EmitParse(benchmark::State &bench) {
    const Circuit circuit = toffoli::decompose(static_cast<int>(bench.range(0)), 2);
    for (auto _ : bench) {
        benchmark::DoNotOptimize(parse(emit(circuit)));
    }
}

}  // namespace

BENCHMARK(BM_Decompose)->Arg(8)->Arg(64)->Arg(512);
BENCHMARK(BM_OptimizeCancel)->Arg(8)->Arg(32)->Arg(128);
BENCHMARK(BM_VerifyEquivalence)->Arg(6)->Arg(8)->Arg(10);
BENCHMARK(BM_EmitParse)->Arg(32)->Arg(256);

BENCHMARK_MAIN();

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

#ifndef QUDITSIM_GROVER_HPP
#define QUDITSIM_GROVER_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "quditsim/circuit.hpp"
#include "quditsim/rng.hpp"
#include "quditsim/statevector.hpp"
#include "quditsim/toffoli.hpp"

namespace quditsim::grover {

/// Search for one marked digit string over N = d^n elements.
struct Problem {
    int n = 1;
    int d = 2;
    std::vector<int> marked;
    int iterations = 0;
};

/// Validates arguments; iterations defaults to iterations_for(d^n).
Problem make_problem(int n, int d, std::vector<int> marked,
                     std::optional<int> iterations = std::nullopt);

/// floor((pi/4) * sqrt(N)), at least 1.
int iterations_for(std::uint64_t N);

/// sin^2((2k+1) * asin(1/sqrt(N))): exact success probability of k rounds of
/// amplitude amplification with a single marked element.
double analytic_success(std::uint64_t N, int k);

/// Sign flip on the marked state only: shift each wire so the marked string
/// becomes |d-1...d-1>, apply a multi-controlled pi phase lowered through the
/// carrier tree, shift back. Diagonal with exactly one -1 entry.
Circuit build_oracle(const Problem &problem);

/// Inverse-Fourier layer, shift |0> to |d-1> per wire, multi-controlled pi
/// phase, unshift, Fourier layer. Equals the diffusion matrix up to a global
/// phase of -1.
Circuit build_diffusion_circuit(int n, int d);

/// Same circuits with the carrier-tree time cycles attached (absolute op
/// indices); the leakage models inject noise at those boundaries.
struct ScheduledCircuit {
    Circuit circuit;
    std::vector<toffoli::Cycle> cycles;
};

ScheduledCircuit build_oracle_scheduled(const Problem &problem);
ScheduledCircuit build_diffusion_scheduled(int n, int d);

struct Result {
    double success_probability = 0.0;
    std::vector<double> probability_trajectory;
    std::optional<std::vector<int>> measured_sample;
};

/// Uniform superposition, then `iterations` rounds of oracle-then-diffusion.
/// Trajectory records the marked-state probability after each round when
/// trace is on. A sample is drawn non-destructively when `sample_rng` is
/// given. Guarded at d^n <= 2^20.
Result run(const Problem &problem, bool trace, Rng *sample_rng = nullptr);

}  // namespace quditsim::grover

#endif

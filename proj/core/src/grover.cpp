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

#include "quditsim/grover.hpp"

#include <cmath>
#include <numbers>

#include "quditsim/error.hpp"

namespace quditsim::grover {

namespace {

constexpr std::uint64_t kSearchSpaceGuard = std::uint64_t{1} << 20;

std::uint64_t pow_u64(int base, int exp) {
    std::uint64_t out = 1;
    for (int i = 0; i < exp; ++i) {
        out *= static_cast<std::uint64_t>(base);
    }
    return out;
}

// Appends the multi-controlled pi phase over all n wires, lowered through the
// carrier tree on wires 0..n-2 with the phase root conditioned on wire n-1.
std::vector<toffoli::Cycle> append_lowered_phase(std::vector<GateOp> &ops, int n, int d) {
    const std::size_t target = static_cast<std::size_t>(n) - 1;
    if (n == 1) {
        const std::size_t offset = ops.size();
        ops.emplace_back(CphaseOp{{}, 0, d - 1, std::numbers::pi});
        toffoli::Cycle root;
        root.end = offset + 1;
        root.level = 1;
        root.is_root = true;
        root.level_first = true;
        root.level_last = true;
        root.path_wire = 0;
        return {root};
    }

    std::vector<std::size_t> controls(static_cast<std::size_t>(n) - 1);
    for (std::size_t i = 0; i < controls.size(); ++i) {
        controls[i] = i;
    }
    toffoli::TreePlan plan = toffoli::plan_control_tree(controls, d);
    const std::size_t offset = ops.size();
    for (const GateOp &op : plan.forward) {
        ops.push_back(op);
    }
    ops.emplace_back(CphaseOp{{{plan.root_wire, plan.root_value}}, target, d - 1, std::numbers::pi});
    for (const GateOp &op : plan.mirror) {
        ops.push_back(op);
    }
    return toffoli::schedule_with_root(plan, offset);
}

void append_shift(std::vector<GateOp> &ops, std::size_t wire, int amount, int d, bool invert) {
    for (int k = 0; k < amount; ++k) {
        ops.emplace_back(SingleOp{wire, invert ? SingleKind::Xinv : SingleKind::X, d});
    }
}

void require_problem(const Problem &problem) {
    if (problem.n < 1 || problem.d < 2) {
        throw std::invalid_argument("search needs n >= 1 wires of dimension >= 2");
    }
    if (problem.marked.size() != static_cast<std::size_t>(problem.n)) {
        throw std::invalid_argument("marked string length does not match wire count");
    }
    for (int digit : problem.marked) {
        if (digit < 0 || digit >= problem.d) {
            throw std::invalid_argument("marked digit " + std::to_string(digit) + " out of range");
        }
    }
    if (problem.iterations < 0) {
        throw std::invalid_argument("iterations must be >= 0");
    }
}

}  // namespace

Problem make_problem(int n, int d, std::vector<int> marked, std::optional<int> iterations) {
    Problem problem;
    problem.n = n;
    problem.d = d;
    problem.marked = std::move(marked);
    problem.iterations = 0;
    require_problem(problem);
    problem.iterations = iterations ? *iterations : iterations_for(pow_u64(d, n));
    require_problem(problem);
    return problem;
}

int iterations_for(std::uint64_t N) {
    if (N < 2) {
        throw std::invalid_argument("search space must have at least 2 elements");
    }
    const double k = std::floor(std::numbers::pi / 4.0 * std::sqrt(static_cast<double>(N)));
    return std::max(1, static_cast<int>(k));
}

double analytic_success(std::uint64_t N, int k) {
    if (N < 2 || k < 0) {
        throw std::invalid_argument("need N >= 2 and k >= 0");
    }
    const double theta = std::asin(1.0 / std::sqrt(static_cast<double>(N)));
    const double s = std::sin((2.0 * k + 1.0) * theta);
    return s * s;
}

ScheduledCircuit build_oracle_scheduled(const Problem &problem) {
    require_problem(problem);
    ScheduledCircuit out;
    out.circuit.wires.assign(static_cast<std::size_t>(problem.n), WireSpec::with_logical(problem.d));
    for (std::size_t w = 0; w < out.circuit.wires.size(); ++w) {
        const int amount = (problem.d - 1 - problem.marked[w]) % problem.d;
        append_shift(out.circuit.ops, w, amount, problem.d, false);
    }
    out.cycles = append_lowered_phase(out.circuit.ops, problem.n, problem.d);
    for (std::size_t w = 0; w < out.circuit.wires.size(); ++w) {
        const int amount = (problem.d - 1 - problem.marked[w]) % problem.d;
        append_shift(out.circuit.ops, w, amount, problem.d, true);
    }
    return out;
}

Circuit build_oracle(const Problem &problem) {
    return build_oracle_scheduled(problem).circuit;
}

ScheduledCircuit build_diffusion_scheduled(int n, int d) {
    if (n < 1 || d < 2) {
        throw std::invalid_argument("diffusion needs n >= 1 wires of dimension >= 2");
    }
    ScheduledCircuit out;
    out.circuit.wires.assign(static_cast<std::size_t>(n), WireSpec::with_logical(d));
    for (std::size_t w = 0; w < out.circuit.wires.size(); ++w) {
        out.circuit.ops.emplace_back(SingleOp{w, SingleKind::Finv, d});
    }
    for (std::size_t w = 0; w < out.circuit.wires.size(); ++w) {
        append_shift(out.circuit.ops, w, d - 1, d, false);
    }
    out.cycles = append_lowered_phase(out.circuit.ops, n, d);
    for (std::size_t w = 0; w < out.circuit.wires.size(); ++w) {
        append_shift(out.circuit.ops, w, d - 1, d, true);
    }
    for (std::size_t w = 0; w < out.circuit.wires.size(); ++w) {
        out.circuit.ops.emplace_back(SingleOp{w, SingleKind::F, d});
    }
    return out;
}

Circuit build_diffusion_circuit(int n, int d) {
    return build_diffusion_scheduled(n, d).circuit;
}

Result run(const Problem &problem, bool trace, Rng *sample_rng) {
    require_problem(problem);
    const std::uint64_t N = pow_u64(problem.d, problem.n);
    if (N > kSearchSpaceGuard) {
        throw ResourceError("search space d^n exceeds guard of 2^20");
    }

    const Circuit oracle = build_oracle(problem);
    const Circuit diffusion = build_diffusion_circuit(problem.n, problem.d);

    std::vector<int> dims(static_cast<std::size_t>(problem.n), problem.d + 2);
    std::vector<int> zeros(static_cast<std::size_t>(problem.n), 0);
    StateVector state = prepare_basis(dims, zeros);
    for (std::size_t w = 0; w < dims.size(); ++w) {
        apply(state, SingleOp{w, SingleKind::F, problem.d});
    }

    Result result;
    for (int round = 0; round < problem.iterations; ++round) {
        for (const GateOp &op : oracle.ops) {
            apply(state, op);
        }
        for (const GateOp &op : diffusion.ops) {
            apply(state, op);
        }
        if (trace) {
            result.probability_trajectory.push_back(probability_of(state, problem.marked));
        }
    }
    result.success_probability = probability_of(state, problem.marked);
    if (sample_rng) {
        result.measured_sample = measure_all(state, *sample_rng);
    }
    return result;
}

}  // namespace quditsim::grover

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

#ifndef QUDITSIM_TOFFOLI_HPP
#define QUDITSIM_TOFFOLI_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "quditsim/circuit.hpp"

namespace quditsim::toffoli {

// The n-wire multi-controlled increment is lowered to two-qudit controlled
// increments through a carrier tree, with no ancilla wires. Control wires are
// paired left to right; the middle wire of each pair becomes the carrier that
// holds the pair's aggregated flag at level d, raising the paired wire one
// level higher (at most d+1) only for the duration of the merge. The mirror
// half restores every carrier.

/// One time cycle of the schedule: the gates inside it act on disjoint wires.
struct Cycle {
    std::size_t end = 0;                 // ops[0..end) are complete after this cycle
    std::vector<std::size_t> raised;     // carrier wires this cycle raises or lowers
    int level = 0;                       // tree level the cycle belongs to
    bool is_root = false;
    bool level_first = false;            // first cycle of its level within its half
    bool level_last = false;             // last cycle of its level within its half
    std::size_t path_wire = 0;           // the level's designated carrier
};

std::vector<std::size_t> cycle_ends(std::span<const Cycle> cycles);

/// Carrier tree over a control set, without the root gate. `forward` raises
/// the carriers, `mirror` is its exact reverse inverse; the caller inserts a
/// root gate conditioned on (root_wire, root_value) between the halves.
struct TreePlan {
    std::vector<GateOp> forward;
    std::vector<GateOp> mirror;
    std::vector<Cycle> forward_cycles;   // ends are relative to `forward`
    std::size_t root_wire = 0;
    int root_value = 0;
};

TreePlan plan_control_tree(std::span<const std::size_t> controls, int d);

/// Cycle schedule for ops laid out as [forward][root gate][mirror] starting
/// at `op_offset` of the enclosing op list.
std::vector<Cycle> schedule_with_root(const TreePlan &plan, std::size_t op_offset);

struct Decomposition {
    Circuit circuit;
    std::vector<Cycle> cycles;           // forward cycles, root cycle, mirrored cycles
    std::size_t root_op = 0;             // index of the root gate in circuit.ops
};

/// Three-wire decomposition: raise wire 1 to level d when wire 0 holds d-1,
/// increment the target mod d when wire 1 holds d, undo the raise.
Circuit decompose_toffoli3(int d);

/// Full n-wire decomposition (wires 0..n-2 control, wire n-1 target) with the
/// time-cycle schedule attached.
Decomposition decompose_scheduled(int n, int d);
Circuit decompose(int n, int d);

/// Deletes adjacent exact-inverse controlled-increment pairs (ops commute
/// past gates on disjoint wires) until a fixpoint. Basis-state action on the
/// full physical space is unchanged.
Circuit optimize_cancel(const Circuit &circuit);

/// Greedy earliest-layer assignment; per-wire op order is preserved.
std::vector<std::vector<std::size_t>> layerize(const Circuit &circuit);

struct DecompositionStats {
    int two_qudit_count = 0;
    int parallel_depth = 0;
    int max_level = 0;
    int wire_count = 0;
};

/// max_level is found by running every computational basis input at desk
/// scale (<= 10 wires and d^wires <= 2^16), statically from gate moduli
/// otherwise.
DecompositionStats stats(const Circuit &circuit, int d);

struct EquivalenceReport {
    std::size_t inputs_checked = 0;
    std::vector<std::string> mismatches;   // capped listing, empty iff equivalent
    std::size_t mismatch_count = 0;
    int max_intermediate_level = 0;
    bool outputs_in_subspace = true;

    bool ok() const {
        return mismatch_count == 0 && outputs_in_subspace;
    }
};

/// Simulates every computational basis input through decompose(n, d) and
/// checks the multi-controlled-increment semantics, control restoration and
/// confinement of outputs to the computational subspace. Guarded at
/// d^n <= 2^16.
EquivalenceReport verify_equivalence(int n, int d);

}  // namespace quditsim::toffoli

#endif

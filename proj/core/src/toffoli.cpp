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

#include "quditsim/toffoli.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "quditsim/error.hpp"
#include "quditsim/statevector.hpp"

namespace quditsim::toffoli {

namespace {

constexpr std::size_t kEquivalenceGuard = std::size_t{1} << 16;

// A subtree's flag wire: `wire` holds `flag` exactly when every control in
// the subtree held d-1 on input. Leaves have flag d-1, internal nodes d.
struct Node {
    std::size_t wire = 0;
    int flag = 0;
    int level = 0;
};

enum Step { kPair = 0, kSet = 1, kUnpair = 2 };

struct LevelBucket {
    std::array<std::vector<GateOp>, 3> ops;
    std::array<std::vector<std::size_t>, 3> raised;
    std::size_t last_node_wire = 0;
};

struct TreeBuilder {
    std::span<const std::size_t> controls;
    int d;
    std::vector<LevelBucket> levels;  // levels[0] unused; tree levels start at 1

    LevelBucket &bucket(int level) {
        if (static_cast<std::size_t>(level) >= levels.size()) {
            levels.resize(static_cast<std::size_t>(level) + 1);
        }
        return levels[static_cast<std::size_t>(level)];
    }

    Node build(std::size_t lo, std::size_t hi) {
        const std::size_t count = hi - lo + 1;
        if (count == 1) {
            return {controls[lo], d - 1, 0};
        }
        if (count == 2) {
            // No middle wire available: the raised right wire is the node.
            const Node left{controls[lo], d - 1, 0};
            const Node right{controls[hi], d - 1, 0};
            LevelBucket &b = bucket(1);
            b.ops[kPair].emplace_back(
                CincOp{left.wire, left.flag, right.wire, right.flag + 2, +1});
            b.raised[kPair].push_back(right.wire);
            b.last_node_wire = right.wire;
            return {right.wire, d, 1};
        }
        const std::size_t mid = lo + count / 2;
        const Node left = build(lo, mid - 1);
        const Node right = build(mid + 1, hi);
        const int level = std::max(left.level, right.level) + 1;
        const std::size_t mid_wire = controls[mid];

        LevelBucket &b = bucket(level);
        const CincOp pair{left.wire, left.flag, right.wire, right.flag + 2, +1};
        b.ops[kPair].emplace_back(pair);
        b.raised[kPair].push_back(right.wire);
        b.ops[kSet].emplace_back(CincOp{right.wire, right.flag + 1, mid_wire, d + 1, +1});
        b.raised[kSet].push_back(mid_wire);
        b.ops[kUnpair].emplace_back(pair.inverted());
        b.raised[kUnpair].push_back(right.wire);
        b.last_node_wire = mid_wire;
        return {mid_wire, d, level};
    }
};

}  // namespace

std::vector<std::size_t> cycle_ends(std::span<const Cycle> cycles) {
    std::vector<std::size_t> ends;
    ends.reserve(cycles.size());
    for (const Cycle &c : cycles) {
        ends.push_back(c.end);
    }
    return ends;
}

TreePlan plan_control_tree(std::span<const std::size_t> controls, int d) {
    if (d < 2) {
        throw std::invalid_argument("dimension must be >= 2, got " + std::to_string(d));
    }
    if (controls.empty()) {
        throw std::invalid_argument("control tree needs at least one control");
    }
    TreePlan plan;
    if (controls.size() == 1) {
        plan.root_wire = controls[0];
        plan.root_value = d - 1;
        return plan;
    }

    TreeBuilder builder{controls, d, {}};
    const Node root = builder.build(0, controls.size() - 1);
    plan.root_wire = root.wire;
    plan.root_value = root.flag;

    for (std::size_t level = 1; level < builder.levels.size(); ++level) {
        LevelBucket &b = builder.levels[level];
        int first_step = -1;
        int last_step = -1;
        for (int step = 0; step < 3; ++step) {
            if (!b.ops[step].empty()) {
                if (first_step < 0) {
                    first_step = step;
                }
                last_step = step;
            }
        }
        for (int step = 0; step < 3; ++step) {
            if (b.ops[step].empty()) {
                continue;
            }
            for (const GateOp &op : b.ops[step]) {
                plan.forward.push_back(op);
            }
            Cycle cycle;
            cycle.end = plan.forward.size();
            cycle.raised = b.raised[step];
            cycle.level = static_cast<int>(level);
            cycle.level_first = step == first_step;
            cycle.level_last = step == last_step;
            cycle.path_wire = b.last_node_wire;
            plan.forward_cycles.push_back(cycle);
        }
    }

    plan.mirror.reserve(plan.forward.size());
    for (std::size_t i = plan.forward.size(); i-- > 0;) {
        plan.mirror.push_back(std::get<CincOp>(plan.forward[i]).inverted());
    }
    return plan;
}

std::vector<Cycle> schedule_with_root(const TreePlan &plan, std::size_t op_offset) {
    std::vector<Cycle> cycles = plan.forward_cycles;
    for (Cycle &c : cycles) {
        c.end += op_offset;
    }

    const int root_level = plan.forward_cycles.empty() ? 1 : plan.forward_cycles.back().level + 1;
    Cycle root_cycle;
    root_cycle.end = op_offset + plan.forward.size() + 1;
    root_cycle.level = root_level;
    root_cycle.is_root = true;
    root_cycle.level_first = true;
    root_cycle.level_last = true;
    root_cycle.path_wire = plan.root_wire;
    cycles.push_back(root_cycle);

    // Mirror cycles reverse the forward schedule; the last mirrored cycle of
    // a level corresponds to the level's first forward cycle.
    std::size_t end = root_cycle.end;
    for (std::size_t i = plan.forward_cycles.size(); i-- > 0;) {
        const Cycle &fwd = plan.forward_cycles[i];
        const std::size_t begin = i ? plan.forward_cycles[i - 1].end : 0;
        Cycle mirrored;
        end += fwd.end - begin;
        mirrored.end = end;
        mirrored.raised = fwd.raised;
        mirrored.level = fwd.level;
        mirrored.level_first = fwd.level_last;
        mirrored.level_last = fwd.level_first;
        mirrored.path_wire = fwd.path_wire;
        cycles.push_back(mirrored);
    }
    return cycles;
}

Decomposition decompose_scheduled(int n, int d) {
    if (n < 3) {
        throw std::invalid_argument("decomposition needs n >= 3 wires, got " + std::to_string(n));
    }
    std::vector<std::size_t> controls(static_cast<std::size_t>(n) - 1);
    for (std::size_t i = 0; i < controls.size(); ++i) {
        controls[i] = i;
    }
    TreePlan plan = plan_control_tree(controls, d);

    Decomposition dec;
    dec.circuit.wires.assign(static_cast<std::size_t>(n), WireSpec::with_logical(d));
    dec.circuit.ops = plan.forward;
    dec.root_op = dec.circuit.ops.size();
    dec.circuit.ops.emplace_back(
        CincOp{plan.root_wire, plan.root_value, static_cast<std::size_t>(n) - 1, d, +1});
    for (const GateOp &op : plan.mirror) {
        dec.circuit.ops.push_back(op);
    }
    dec.cycles = schedule_with_root(plan, 0);
    return dec;
}

Circuit decompose(int n, int d) {
    return decompose_scheduled(n, d).circuit;
}

Circuit decompose_toffoli3(int d) {
    return decompose(3, d);
}

Circuit optimize_cancel(const Circuit &circuit) {
    Circuit out = circuit;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i + 1 < out.ops.size() && !changed; ++i) {
            const auto *a = std::get_if<CincOp>(&out.ops[i]);
            if (!a) {
                continue;
            }
            for (std::size_t j = i + 1; j < out.ops.size(); ++j) {
                if (!op_touches_wire(out.ops[j], a->control) && !op_touches_wire(out.ops[j], a->target)) {
                    continue;
                }
                const auto *b = std::get_if<CincOp>(&out.ops[j]);
                if (b && *b == a->inverted()) {
                    out.ops.erase(out.ops.begin() + static_cast<std::ptrdiff_t>(j));
                    out.ops.erase(out.ops.begin() + static_cast<std::ptrdiff_t>(i));
                    changed = true;
                }
                break;  // nearest op sharing a wire either cancels or blocks
            }
        }
    }
    return out;
}

std::vector<std::vector<std::size_t>> layerize(const Circuit &circuit) {
    std::vector<std::vector<std::size_t>> layers;
    std::vector<std::size_t> next_free(circuit.wires.size(), 0);
    for (std::size_t i = 0; i < circuit.ops.size(); ++i) {
        std::size_t layer = 0;
        const auto wires = op_wires(circuit.ops[i]);
        for (std::size_t w : wires) {
            layer = std::max(layer, next_free[w]);
        }
        if (layer == layers.size()) {
            layers.emplace_back();
        }
        layers[layer].push_back(i);
        for (std::size_t w : wires) {
            next_free[w] = layer + 1;
        }
    }
    return layers;
}

namespace {

bool desk_scale(std::size_t wires, int d) {
    if (wires > 10) {
        return false;
    }
    std::size_t total = 1;
    for (std::size_t i = 0; i < wires; ++i) {
        total *= static_cast<std::size_t>(d);
        if (total > kEquivalenceGuard) {
            return false;
        }
    }
    return true;
}

// Lexicographic successor of a computational digit string; false once done.
bool next_input(std::vector<int> &digits, int d) {
    for (std::size_t w = digits.size(); w-- > 0;) {
        if (++digits[w] < d) {
            return true;
        }
        digits[w] = 0;
    }
    return false;
}

}  // namespace

DecompositionStats stats(const Circuit &circuit, int d) {
    DecompositionStats result;
    result.wire_count = static_cast<int>(circuit.wires.size());
    result.parallel_depth = static_cast<int>(layerize(circuit).size());
    for (const GateOp &op : circuit.ops) {
        if (std::holds_alternative<CincOp>(op)) {
            ++result.two_qudit_count;
        }
    }

    if (desk_scale(circuit.wires.size(), d) && !circuit.wires.empty()) {
        std::vector<int> dims;
        for (const WireSpec &w : circuit.wires) {
            dims.push_back(w.physical_dim);
        }
        int max_level = d - 1;
        std::vector<int> digits(circuit.wires.size(), 0);
        do {
            std::vector<int> cur = digits;
            for (const GateOp &op : circuit.ops) {
                apply_to_basis(dims, cur, op);
                for (int digit : cur) {
                    max_level = std::max(max_level, digit);
                }
            }
        } while (next_input(digits, d));
        result.max_level = max_level;
    } else {
        int max_level = d - 1;
        for (const GateOp &op : circuit.ops) {
            if (const auto *s = std::get_if<SingleOp>(&op)) {
                max_level = std::max(max_level, s->modulus - 1);
            } else if (const auto *c = std::get_if<CincOp>(&op)) {
                max_level = std::max(max_level, c->modulus - 1);
            } else if (const auto *m = std::get_if<MultiIncOp>(&op)) {
                max_level = std::max(max_level, m->modulus - 1);
            }
        }
        result.max_level = max_level;
    }
    return result;
}

EquivalenceReport verify_equivalence(int n, int d) {
    const double dim = std::pow(static_cast<double>(d), n);
    if (dim > static_cast<double>(kEquivalenceGuard)) {
        throw ResourceError("equivalence scan guarded at d^n <= 2^16");
    }
    const Circuit circuit = decompose(n, d);
    std::vector<int> dims;
    for (const WireSpec &w : circuit.wires) {
        dims.push_back(w.physical_dim);
    }

    EquivalenceReport report;
    const std::size_t target = static_cast<std::size_t>(n) - 1;
    std::vector<int> digits(static_cast<std::size_t>(n), 0);
    do {
        std::vector<int> got = digits;
        for (const GateOp &op : circuit.ops) {
            apply_to_basis(dims, got, op);
            for (int digit : got) {
                report.max_intermediate_level = std::max(report.max_intermediate_level, digit);
            }
        }

        std::vector<int> want = digits;
        bool fire = true;
        for (std::size_t w = 0; w < target; ++w) {
            fire = fire && digits[w] == d - 1;
        }
        if (fire) {
            want[target] = (want[target] + 1) % d;
        }

        for (int digit : got) {
            if (digit >= d) {
                report.outputs_in_subspace = false;
            }
        }
        if (got != want) {
            ++report.mismatch_count;
            if (report.mismatches.size() < 8) {
                report.mismatches.push_back(format_digits(dims, digits) + " -> " + format_digits(dims, got) +
                                            " (want " + format_digits(dims, want) + ")");
            }
        }
        ++report.inputs_checked;
    } while (next_input(digits, d));
    return report;
}

}  // namespace quditsim::toffoli

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

#include <cmath>

#include "gtest/gtest.h"

#include "quditsim/error.hpp"
#include "quditsim/statevector.hpp"
#include "test_util.hpp"

using namespace quditsim;

TEST(toffoli, toffoli3_structure) {
    for (int d = 2; d <= 5; ++d) {
        const Circuit c = toffoli::decompose_toffoli3(d);
        ASSERT_EQ(c.ops.size(), 3u);
        const auto &raise = std::get<CincOp>(c.ops[0]);
        EXPECT_EQ(raise, (CincOp{0, d - 1, 1, d + 1, +1}));
        const auto &root = std::get<CincOp>(c.ops[1]);
        EXPECT_EQ(root, (CincOp{1, d, 2, d, +1}));
        EXPECT_EQ(std::get<CincOp>(c.ops[2]), raise.inverted());
    }
}

TEST(toffoli, toffoli3_walkthrough_d2) {
    const Circuit c = toffoli::decompose_toffoli3(2);
    std::vector<int> dims{4, 4, 4};
    for (int t = 0; t < 2; ++t) {
        std::vector<int> digits{1, 1, t};
        apply_to_basis(dims, digits, c.ops[0]);
        EXPECT_EQ(digits, (std::vector<int>{1, 2, t}));
        apply_to_basis(dims, digits, c.ops[1]);
        EXPECT_EQ(digits, (std::vector<int>{1, 2, 1 - t}));
        apply_to_basis(dims, digits, c.ops[2]);
        EXPECT_EQ(digits, (std::vector<int>{1, 1, 1 - t}));
    }
}

TEST(toffoli, toffoli3_control_fails) {
    const Circuit c = toffoli::decompose_toffoli3(2);
    std::vector<int> dims{4, 4, 4};
    std::vector<int> digits{0, 1, 0};
    for (const GateOp &op : c.ops) {
        apply_to_basis(dims, digits, op);
    }
    EXPECT_EQ(digits, (std::vector<int>{0, 1, 0}));
}

TEST(toffoli, toffoli3_matches_reference_matrix_qutrits) {
    const ComputationalMatrix got = extract_computational_matrix(toffoli::decompose_toffoli3(3), 3);
    EXPECT_LT(got.max_off_subspace, 1e-12);
    EXPECT_LT(gates::max_abs_difference(got.matrix, gates::build_multi_toffoli(3, 3)), 1e-12);
}

TEST(toffoli, rejects_small_parameters) {
    EXPECT_THROW(toffoli::decompose(2, 2), std::invalid_argument);
    EXPECT_THROW(toffoli::decompose(3, 1), std::invalid_argument);
}

TEST(toffoli, ancilla_free_for_all_sizes) {
    for (int n = 3; n <= 32; ++n) {
        const Circuit c = toffoli::decompose(n, 2);
        EXPECT_EQ(c.wires.size(), static_cast<std::size_t>(n));
    }
}

TEST(toffoli, mirror_structure) {
    for (const auto &[n, d] : {std::pair{3, 2}, {5, 2}, {8, 2}, {6, 3}, {13, 4}}) {
        const toffoli::Decomposition dec = toffoli::decompose_scheduled(n, d);
        const auto &ops = dec.circuit.ops;
        ASSERT_EQ(ops.size() % 2, 1u);
        EXPECT_EQ(dec.root_op, ops.size() / 2);
        for (std::size_t k = 0; k < ops.size() / 2; ++k) {
            const auto &front = std::get<CincOp>(ops[k]);
            const auto &back = std::get<CincOp>(ops[ops.size() - 1 - k]);
            EXPECT_EQ(back, front.inverted()) << "k=" << k << " n=" << n << " d=" << d;
        }
    }
}

TEST(toffoli, schedule_covers_ops_in_order) {
    for (const auto &[n, d] : {std::pair{3, 2}, {4, 2}, {8, 2}, {11, 3}}) {
        const toffoli::Decomposition dec = toffoli::decompose_scheduled(n, d);
        std::size_t prev = 0;
        for (const toffoli::Cycle &cycle : dec.cycles) {
            EXPECT_GT(cycle.end, prev);
            prev = cycle.end;
        }
        EXPECT_EQ(prev, dec.circuit.ops.size());
    }
}

TEST(toffoli, eight_wire_cycle_count_matches_table) {
    const toffoli::Decomposition dec = toffoli::decompose_scheduled(8, 2);
    EXPECT_EQ(dec.circuit.ops.size(), 19u);
    EXPECT_EQ(dec.cycles.size(), 13u);  // 7 forward + 6 mirror
    EXPECT_EQ(dec.cycles[6].end, 10u);  // root fires in cycle 7
    EXPECT_TRUE(dec.cycles[6].is_root);
}

TEST(toffoli, optimize_cancels_trivial_pair) {
    Circuit c;
    c.wires = {WireSpec::with_logical(2), WireSpec::with_logical(2)};
    c.ops.emplace_back(CincOp{0, 1, 1, 3, +1});
    c.ops.emplace_back(CincOp{0, 1, 1, 3, -1});
    EXPECT_TRUE(toffoli::optimize_cancel(c).ops.empty());
}

TEST(toffoli, optimize_blocked_by_intervening_op) {
    Circuit c;
    c.wires = {WireSpec::with_logical(2), WireSpec::with_logical(2), WireSpec::with_logical(2)};
    c.ops.emplace_back(CincOp{0, 1, 1, 3, +1});
    c.ops.emplace_back(CincOp{1, 2, 2, 2, +1});  // touches wire 1
    c.ops.emplace_back(CincOp{0, 1, 1, 3, -1});
    EXPECT_EQ(toffoli::optimize_cancel(c).ops.size(), 3u);
}

TEST(toffoli, optimize_commutes_past_disjoint_ops) {
    Circuit c;
    c.wires.assign(4, WireSpec::with_logical(2));
    c.ops.emplace_back(CincOp{0, 1, 1, 3, +1});
    c.ops.emplace_back(CincOp{2, 1, 3, 3, +1});  // disjoint wires
    c.ops.emplace_back(CincOp{0, 1, 1, 3, -1});
    EXPECT_EQ(toffoli::optimize_cancel(c).ops.size(), 1u);
}

TEST(toffoli, optimized_gate_count_is_2n_minus_3) {
    for (int d = 2; d <= 4; ++d) {
        for (int n = 3; n <= 16; ++n) {
            const Circuit optimized = toffoli::optimize_cancel(toffoli::decompose(n, d));
            EXPECT_EQ(optimized.ops.size(), static_cast<std::size_t>(2 * n - 3)) << "n=" << n << " d=" << d;
        }
    }
}

TEST(toffoli, optimize_is_idempotent_and_never_grows) {
    for (const auto &[n, d] : {std::pair{5, 2}, {8, 2}, {7, 3}}) {
        const Circuit base = toffoli::decompose(n, d);
        const Circuit once = toffoli::optimize_cancel(base);
        EXPECT_LE(once.ops.size(), base.ops.size());
        EXPECT_LE(toffoli::layerize(once).size(), toffoli::layerize(base).size());
        EXPECT_EQ(toffoli::optimize_cancel(once), once);
    }
}

TEST(toffoli, optimized_circuit_equivalent_on_full_physical_space) {
    // Every 4^4 basis state of the full physical space, leakage levels
    // included, maps identically through the raw and optimized circuits.
    const Circuit base = toffoli::decompose(4, 2);
    const Circuit optimized = toffoli::optimize_cancel(base);
    std::vector<int> dims(4, 4);
    for (std::size_t idx = 0; idx < 256; ++idx) {
        std::vector<int> a = decode_index(dims, idx);
        std::vector<int> b = a;
        for (const GateOp &op : base.ops) {
            apply_to_basis(dims, a, op);
        }
        for (const GateOp &op : optimized.ops) {
            apply_to_basis(dims, b, op);
        }
        EXPECT_EQ(a, b) << "input index " << idx;
    }
}

TEST(toffoli, layerize_disjoint_ops_share_a_layer) {
    Circuit c;
    c.wires.assign(4, WireSpec::with_logical(2));
    c.ops.emplace_back(CincOp{0, 1, 1, 3, +1});
    c.ops.emplace_back(CincOp{2, 1, 3, 3, +1});
    EXPECT_EQ(toffoli::layerize(c).size(), 1u);
}

TEST(toffoli, layerize_chain_is_sequential) {
    EXPECT_EQ(toffoli::layerize(toffoli::decompose_toffoli3(2)).size(), 3u);
}

TEST(toffoli, depth_grows_logarithmically) {
    for (int d = 2; d <= 3; ++d) {
        for (int n : {4, 8, 16}) {
            const auto depth_n = toffoli::layerize(toffoli::decompose(n, d)).size();
            const auto depth_2n = toffoli::layerize(toffoli::decompose(2 * n, d)).size();
            EXPECT_LE(depth_2n, depth_n + 4) << "n=" << n << " d=" << d;
        }
    }
}

TEST(toffoli, stats_of_toffoli3) {
    const toffoli::DecompositionStats st = toffoli::stats(toffoli::decompose_toffoli3(2), 2);
    EXPECT_EQ(st.two_qudit_count, 3);
    EXPECT_EQ(st.parallel_depth, 3);
    EXPECT_EQ(st.max_level, 2);
    EXPECT_EQ(st.wire_count, 3);
}

TEST(toffoli, stats_of_optimized_eight_wire) {
    const Circuit c = toffoli::optimize_cancel(toffoli::decompose(8, 2));
    const toffoli::DecompositionStats st = toffoli::stats(c, 2);
    EXPECT_EQ(st.two_qudit_count, 13);
    EXPECT_EQ(st.wire_count, 8);
    EXPECT_EQ(st.max_level, 3);
}

TEST(toffoli, max_level_stays_within_carrier_band) {
    for (int d = 2; d <= 3; ++d) {
        for (int n = 3; n <= 8; ++n) {
            if (std::pow(d, n) > 65536.0) {
                continue;
            }
            const toffoli::DecompositionStats st = toffoli::stats(toffoli::decompose(n, d), d);
            EXPECT_LE(st.max_level, d + 1) << "n=" << n << " d=" << d;
        }
    }
}

TEST(toffoli, stats_static_fallback_for_large_circuits) {
    const toffoli::DecompositionStats st = toffoli::stats(toffoli::decompose(24, 2), 2);
    EXPECT_EQ(st.wire_count, 24);
    EXPECT_EQ(st.max_level, 3);
}

TEST(toffoli, verify_equivalence_small_grid) {
    const auto small = toffoli::verify_equivalence(3, 2);
    EXPECT_EQ(small.inputs_checked, 8u);
    EXPECT_TRUE(small.ok());

    const auto qutrits = toffoli::verify_equivalence(3, 3);
    EXPECT_EQ(qutrits.inputs_checked, 27u);
    EXPECT_TRUE(qutrits.ok());

    const auto wide = toffoli::verify_equivalence(4, 4);
    EXPECT_EQ(wide.inputs_checked, 256u);
    EXPECT_TRUE(wide.ok());

    const auto eight = toffoli::verify_equivalence(8, 2);
    EXPECT_EQ(eight.inputs_checked, 256u);
    EXPECT_TRUE(eight.ok());
    EXPECT_EQ(eight.max_intermediate_level, 3);
}

TEST(toffoli, verify_equivalence_guard) {
    EXPECT_THROW(toffoli::verify_equivalence(10, 4), ResourceError);
}

TEST(toffoli, decomposed_matches_reference_matrix_on_amplitudes) {
    // Dense cross-check on the computational subspace for a few small cases.
    for (const auto &[n, d] : {std::pair{3, 2}, {4, 2}, {3, 3}}) {
        const ComputationalMatrix got = extract_computational_matrix(toffoli::decompose(n, d), d);
        EXPECT_LT(got.max_off_subspace, 1e-12);
        EXPECT_LT(gates::max_abs_difference(got.matrix, gates::build_multi_toffoli(n, d)), 1e-12);
    }
}

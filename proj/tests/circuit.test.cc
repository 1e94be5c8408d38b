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

#include "quditsim/circuit.hpp"

#include <numbers>

#include "gtest/gtest.h"

#include "quditsim/grover.hpp"
#include "quditsim/toffoli.hpp"
#include "test_util.hpp"

using namespace quditsim;

TEST(circuit, validate_empty_circuit_is_clean) {
    Circuit c;
    EXPECT_TRUE(validate(c).empty());
}

TEST(circuit, validate_rejects_control_equal_target) {
    Circuit c;
    c.wires = {WireSpec::with_logical(2), WireSpec::with_logical(2)};
    c.ops.emplace_back(CincOp{0, 1, 0, 3, +1});
    const auto violations = validate(c);
    ASSERT_EQ(violations.size(), 1u);
    EXPECT_EQ(violations[0].op_index, 0u);
    EXPECT_EQ(violations[0].rule, "wires not distinct");
}

TEST(circuit, validate_rejects_control_value_at_physical_dim) {
    Circuit c;
    c.wires = {WireSpec::with_logical(2), WireSpec::with_logical(2)};
    c.ops.emplace_back(CincOp{0, 4, 1, 3, +1});
    const auto violations = validate(c);
    ASSERT_EQ(violations.size(), 1u);
    EXPECT_EQ(violations[0].rule, "control_value out of range");
}

TEST(circuit, validate_rejects_bad_wire_table) {
    Circuit c;
    c.wires = {WireSpec{1, 3}};
    ASSERT_EQ(validate(c).size(), 2u);
}

TEST(circuit, emit_single_x) {
    Circuit c;
    c.wires = {WireSpec::with_logical(2)};
    c.ops.emplace_back(SingleOp{0, SingleKind::X, 2});
    EXPECT_EQ(emit(c), "wires 4\nx w=0 m=2\n");
}

TEST(circuit, emit_refuses_invalid) {
    Circuit c;
    c.wires = {WireSpec::with_logical(2)};
    c.ops.emplace_back(SingleOp{3, SingleKind::X, 2});
    EXPECT_THROW(emit(c), std::invalid_argument);
}

TEST(circuit, parse_cinc_line) {
    const Circuit c = parse("wires 4 4\ncinc c=0 v=1 t=1 m=3 delta=+1\n");
    ASSERT_EQ(c.wires.size(), 2u);
    EXPECT_EQ(c.wires[0].logical_dim, 2);
    ASSERT_EQ(c.ops.size(), 1u);
    const auto &op = std::get<CincOp>(c.ops[0]);
    EXPECT_EQ(op.control, 0u);
    EXPECT_EQ(op.control_value, 1);
    EXPECT_EQ(op.target, 1u);
    EXPECT_EQ(op.modulus, 3);
    EXPECT_EQ(op.delta, +1);
}

TEST(circuit, parse_reports_line_number) {
    try {
        parse("wires 4\nbogus\n");
        FAIL() << "expected ParseError";
    } catch (const ParseError &e) {
        EXPECT_EQ(e.line(), 2u);
    }
}

TEST(circuit, parse_skips_comments_and_blank_lines) {
    const Circuit c = parse("# header\nwires 4\n\nx w=0 m=2  # trailing\n");
    EXPECT_EQ(c.ops.size(), 1u);
}

TEST(circuit, parse_rejects_missing_header) {
    EXPECT_THROW(parse("x w=0 m=2\n"), ParseError);
}

TEST(circuit, parse_rejects_dimension_mismatch) {
    EXPECT_THROW(parse("wires 4\ncinc c=0 v=1 t=1 m=3 delta=+1\n"), ParseError);
}

TEST(circuit, cphase_round_trips_exactly) {
    Circuit c;
    c.wires = {WireSpec::with_logical(3), WireSpec::with_logical(3)};
    c.ops.emplace_back(CphaseOp{{{0, 2}}, 1, 2, std::numbers::pi});
    EXPECT_EQ(parse(emit(c)), c);
}

TEST(circuit, cphase_with_no_controls_round_trips) {
    Circuit c;
    c.wires = {WireSpec::with_logical(2)};
    c.ops.emplace_back(CphaseOp{{}, 0, 1, std::numbers::pi});
    EXPECT_EQ(parse(emit(c)), c);
}

TEST(circuit, round_trip_randomized) {
    Rng rng = make_rng(7);
    for (int round = 0; round < 200; ++round) {
        const Circuit c = testutil::random_circuit(rng, 12);
        EXPECT_EQ(parse(emit(c)), c);
    }
}

TEST(circuit, emit_parse_fixed_point_on_decompositions) {
    for (int n = 3; n <= 6; ++n) {
        for (int d = 2; d <= 4; ++d) {
            const Circuit c = toffoli::decompose(n, d);
            const std::string text = emit(c);
            EXPECT_EQ(emit(parse(text)), text);
        }
    }
}

TEST(circuit, builders_produce_valid_circuits) {
    for (int d = 2; d <= 4; ++d) {
        for (int n = 3; n <= 9; ++n) {
            EXPECT_TRUE(validate(toffoli::decompose(n, d)).empty()) << "n=" << n << " d=" << d;
        }
        std::vector<int> marked(3, d - 1);
        const auto problem = grover::make_problem(3, d, marked);
        EXPECT_TRUE(validate(grover::build_oracle(problem)).empty());
        EXPECT_TRUE(validate(grover::build_diffusion_circuit(3, d)).empty());
    }
}

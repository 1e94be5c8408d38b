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

#include "quditsim/leakage.hpp"

#include <cmath>
#include <numbers>

#include "gtest/gtest.h"

#include "quditsim/toffoli.hpp"
#include "test_util.hpp"

using namespace quditsim;

namespace {

// Independent construction of exp(-iHt) for the coupling Hamiltonian via its
// spectral decomposition: eigenvectors (|d-1> +- |d>)/sqrt(2) at +-1/2, the
// rest at 0.
gates::UnitaryMatrix leak_op_by_diagonalization(double t, int d) {
    const std::size_t phys = static_cast<std::size_t>(d) + 2;
    gates::UnitaryMatrix out(phys);
    const std::size_t a = static_cast<std::size_t>(d) - 1;
    const std::size_t b = static_cast<std::size_t>(d);
    for (std::size_t k = 0; k < phys; ++k) {
        if (k != a && k != b) {
            out.at(k, k) = 1.0;
        }
    }
    const gates::cdouble plus = std::polar(1.0, -t / 2.0);
    const gates::cdouble minus = std::polar(1.0, +t / 2.0);
    out.at(a, a) = (plus + minus) / 2.0;
    out.at(b, b) = (plus + minus) / 2.0;
    out.at(a, b) = (plus - minus) / 2.0;
    out.at(b, a) = (plus - minus) / 2.0;
    return out;
}

}  // namespace

TEST(leakage, unitary_op_at_zero_time_is_identity) {
    const auto u = leakage::unitary_leak_op(0.0, 3);
    EXPECT_LT(gates::max_abs_difference(u, gates::UnitaryMatrix::identity(5)), 1e-15);
}

TEST(leakage, unitary_op_matches_diagonalization_oracle) {
    for (double t : {0.1, 0.7, 1.0, 2.0 * std::numbers::pi}) {
        for (int d : {2, 3, 4}) {
            const auto got = leakage::unitary_leak_op(t, d);
            const auto want = leak_op_by_diagonalization(t, d);
            EXPECT_LT(gates::max_abs_difference(got, want), 1e-12) << "t=" << t << " d=" << d;
        }
    }
}

TEST(leakage, unitary_op_full_period_is_sign_flip_on_block) {
    const int d = 2;
    const auto u = leakage::unitary_leak_op(2.0 * std::numbers::pi, d);
    EXPECT_NEAR(u.at(1, 1).real(), -1.0, 1e-12);
    EXPECT_NEAR(u.at(2, 2).real(), -1.0, 1e-12);
    EXPECT_NEAR(u.at(0, 0).real(), 1.0, 1e-15);
    EXPECT_NEAR(u.at(3, 3).real(), 1.0, 1e-15);
}

TEST(leakage, unitary_op_is_unitary_and_local) {
    for (double t : {0.3, 1.7}) {
        const auto u = leakage::unitary_leak_op(t, 3);
        EXPECT_TRUE(gates::is_unitary(u, 1e-12));
        // identity outside the {d-1, d} block
        EXPECT_EQ(u.at(0, 0), gates::cdouble(1.0));
        EXPECT_EQ(u.at(1, 1), gates::cdouble(1.0));
        EXPECT_EQ(u.at(4, 4), gates::cdouble(1.0));
        EXPECT_EQ(u.at(0, 2), gates::cdouble(0.0));
    }
}

TEST(leakage, coupling_moves_sin_squared_mass) {
    for (int d : {2, 3}) {
        for (double t : {0.1, 0.5, 1.0, std::numbers::pi}) {
            std::vector<int> dims{d + 2};
            std::vector<int> top{d - 1};
            StateVector state = prepare_basis(dims, top);
            apply_dense_single(state, 0, leakage::unitary_leak_op(t, d));
            const double want = std::sin(t / 2.0) * std::sin(t / 2.0);
            const int level_d[] = {d};
            EXPECT_NEAR(subspace_mass(state, 0, level_d), want, 1e-10);
        }
    }
}

TEST(leakage, rate_identity_on_random_computational_states) {
    Rng rng = make_rng(61);
    for (int d : {2, 3, 4}) {
        for (double t : {0.1, 0.5, 1.0, std::numbers::pi}) {
            for (int round = 0; round < 10; ++round) {
                // random state confined to the computational levels
                std::vector<int> dims{d + 2};
                StateVector state = testutil::random_state(rng, dims);
                for (int level = d; level < d + 2; ++level) {
                    state.amps[static_cast<std::size_t>(level)] = 0.0;
                }
                const double norm = std::sqrt(state.norm_sq());
                for (auto &amp : state.amps) {
                    amp /= norm;
                }
                const double top_mass = std::norm(state.amps[static_cast<std::size_t>(d - 1)]);
                apply_dense_single(state, 0, leakage::unitary_leak_op(t, d));
                const double want = std::sin(t / 2.0) * std::sin(t / 2.0) * top_mass;
                EXPECT_NEAR(leakage::leakage_rate(state, 0, d), want, 1e-10);
            }
        }
    }
}

TEST(leakage, rate_is_zero_on_computational_basis_states) {
    std::vector<int> dims{4, 4};
    std::vector<int> digits{1, 0};
    const StateVector state = prepare_basis(dims, digits);
    EXPECT_EQ(leakage::leakage_rate(state, 0, 2), 0.0);
    EXPECT_EQ(leakage::leakage_rate(state, 1, 2), 0.0);
}

TEST(leakage, rate_half_superposition) {
    const int d = 3;
    std::vector<int> dims{d + 2};
    std::vector<int> zero{0};
    StateVector state = prepare_basis(dims, zero);
    state.amps[0] = 1.0 / std::sqrt(2.0);
    state.amps[static_cast<std::size_t>(d - 1)] = 1.0 / std::sqrt(2.0);
    const double t = 0.8;
    apply_dense_single(state, 0, leakage::unitary_leak_op(t, d));
    EXPECT_NEAR(leakage::leakage_rate(state, 0, d), std::sin(t / 2) * std::sin(t / 2) / 2.0, 1e-10);
}

TEST(leakage, carrier_sits_in_leak_band_mid_circuit) {
    // After the first gate of the 3-wire decomposition on |1,1,t>, the raised
    // carrier occupies level d exactly.
    const Circuit c = toffoli::decompose_toffoli3(2);
    std::vector<int> dims{4, 4, 4};
    std::vector<int> digits{1, 1, 0};
    StateVector state = prepare_basis(dims, digits);
    apply(state, c.ops[0]);
    EXPECT_NEAR(leakage::leakage_rate(state, 1, 2), 1.0, 1e-12);
}

TEST(leakage, erasure_never_fires_at_zero_probability) {
    std::vector<int> dims{4};
    std::vector<int> one{1};
    StateVector state = prepare_basis(dims, one);
    Rng rng = make_rng(7);
    for (int i = 0; i < 1000; ++i) {
        EXPECT_FALSE(leakage::erasure_step(state, 0, 0.0, rng, 2));
    }
    EXPECT_NEAR(probability_of(state, one), 1.0, 1e-15);
}

TEST(leakage, erasure_always_fires_at_unit_probability) {
    std::vector<int> dims{4};
    Rng rng = make_rng(8);
    for (int start = 0; start < 2; ++start) {
        std::vector<int> digits{start};
        StateVector state = prepare_basis(dims, digits);
        EXPECT_TRUE(leakage::erasure_step(state, 0, 1.0, rng, 2));
        std::vector<int> leaked{2};
        EXPECT_NEAR(probability_of(state, leaked), 1.0, 1e-12);
    }
}

TEST(leakage, erasure_frequency_matches_probability) {
    std::vector<int> dims{4};
    std::vector<int> zero{0};
    Rng rng = make_rng(2026);
    int fired = 0;
    const int trials = 100000;
    for (int i = 0; i < trials; ++i) {
        StateVector state = prepare_basis(dims, zero);
        fired += leakage::erasure_step(state, 0, 0.3, rng, 2);
    }
    EXPECT_NEAR(fired / static_cast<double>(trials), 0.3, 0.005);
}

TEST(leakage, erasure_on_superposition_preserves_norm) {
    Rng rng = make_rng(77);
    std::vector<int> dims{4, 4};
    StateVector state = testutil::random_state(rng, dims);
    ASSERT_TRUE(leakage::erasure_step(state, 1, 1.0, rng, 2));
    EXPECT_NEAR(state.norm_sq(), 1.0, 1e-12);
    const int leak_level[] = {2};
    EXPECT_NEAR(subspace_mass(state, 1, leak_level), 1.0, 1e-12);
}

TEST(leakage, erasure_respects_leak_level_flag) {
    std::vector<int> dims{4};
    std::vector<int> one{1};
    StateVector state = prepare_basis(dims, one);
    Rng rng = make_rng(9);
    leakage::erasure_step(state, 0, 1.0, rng, 3);
    std::vector<int> top{3};
    EXPECT_NEAR(probability_of(state, top), 1.0, 1e-12);
}

TEST(leakage, survival_formula_values) {
    EXPECT_EQ(leakage::analytic_survival(8, 2, 0.0), 1.0);
    EXPECT_NEAR(leakage::analytic_survival(8, 2, 0.001), std::pow(0.999, 96), 1e-12);
    EXPECT_NEAR(leakage::analytic_survival(8, 2, 0.0001), std::pow(0.9999, 96), 1e-12);
    EXPECT_NEAR(leakage::analytic_survival(14, 2, 0.001), std::pow(0.999, 1024), 1e-12);
}

TEST(leakage, survival_is_monotone) {
    for (int n = 2; n < 14; ++n) {
        EXPECT_GT(leakage::analytic_survival(n, 2, 0.001), leakage::analytic_survival(n + 1, 2, 0.001));
    }
    EXPECT_GT(leakage::analytic_survival(6, 2, 0.0001), leakage::analytic_survival(6, 2, 0.001));
}

TEST(leakage, forced_leak_reproduces_failure_cases) {
    // Case (i): controls idle, the carrier leaks to level d before the root
    // gate, and the target is wrongly incremented.
    const Circuit c = toffoli::decompose_toffoli3(2);
    std::vector<int> dims{4, 4, 4};
    Rng rng = make_rng(10);
    {
        std::vector<int> digits{0, 0, 0};
        StateVector state = prepare_basis(dims, digits);
        apply(state, c.ops[0]);
        ASSERT_TRUE(leakage::erasure_step(state, 1, 1.0, rng, 2));
        apply(state, c.ops[1]);
        apply(state, c.ops[2]);
        std::vector<int> wrong{0, 2, 1};
        EXPECT_NEAR(probability_of(state, wrong), 1.0, 1e-12);
    }
    // Case (ii): controls are all set but the carrier leaked beforehand; the
    // pair gate wraps it to level 0 and the increment never happens.
    {
        std::vector<int> digits{1, 1, 0};
        StateVector state = prepare_basis(dims, digits);
        ASSERT_TRUE(leakage::erasure_step(state, 1, 1.0, rng, 2));
        for (const GateOp &op : c.ops) {
            apply(state, op);
        }
        std::vector<int> wrong{1, 2, 0};  // target untouched
        EXPECT_NEAR(probability_of(state, wrong), 1.0, 1e-12);
    }
}

TEST(leakage, leak_events_count_matches_tree_depth) {
    // 2*ceil(log2 n) - 1 opportunities per lowered gate.
    for (const auto &[n, want] : {std::pair{4, 3}, {8, 5}, {16, 7}}) {
        const auto dec = toffoli::decompose_scheduled(n, 2);
        EXPECT_EQ(leakage::leak_events(dec.cycles).size(), static_cast<std::size_t>(want)) << "n=" << n;
    }
}

TEST(leakage, mc_with_zero_probability_matches_noiseless) {
    const auto problem = grover::make_problem(3, 2, {1, 0, 1});
    const auto row = leakage::grover_erasure_mc(problem, 0.0, 50, 42);
    const auto clean = grover::run(problem, false);
    EXPECT_NEAR(row.mc_success, clean.success_probability, 1e-9);
    EXPECT_NEAR(row.mc_stderr, 0.0, 1e-12);
}

TEST(leakage, mc_is_seed_reproducible) {
    const auto problem = grover::make_problem(3, 2, {1, 1, 0});
    const auto a = leakage::grover_erasure_mc(problem, 0.01, 200, 7);
    const auto b = leakage::grover_erasure_mc(problem, 0.01, 200, 7);
    EXPECT_EQ(a.mc_success, b.mc_success);
    EXPECT_EQ(a.mc_stderr, b.mc_stderr);
    const auto c = leakage::grover_erasure_mc(problem, 0.01, 200, 8);
    EXPECT_NE(a.mc_success, c.mc_success);
}

TEST(leakage, mc_with_certain_leak_destroys_search) {
    const auto problem = grover::make_problem(3, 2, {0, 1, 1});
    const auto row = leakage::grover_erasure_mc(problem, 1.0, 400, 3);
    EXPECT_LE(row.mc_success, 1.0 / 8.0 + 3.0 * row.mc_stderr + 1e-9);
}

TEST(leakage, mc_tracks_survival_times_success) {
    const auto problem = grover::make_problem(4, 2, {0, 0, 0, 0});
    const auto row = leakage::grover_erasure_mc(problem, 0.001, 4000, 11);
    const double want = leakage::analytic_survival(4, 2, 0.001) * grover::analytic_success(16, problem.iterations);
    EXPECT_NEAR(row.mc_success, want, 3.0 * row.mc_stderr);
}

TEST(leakage, unitary_run_with_zero_time_is_noiseless) {
    const auto problem = grover::make_problem(3, 2, {1, 0, 0});
    const double noisy = leakage::grover_unitary_leak_success(problem, 0.0);
    const double clean = grover::run(problem, false).success_probability;
    EXPECT_NEAR(noisy, clean, 1e-12);
}

TEST(leakage, unitary_run_degrades_gently) {
    const auto problem = grover::make_problem(3, 2, {1, 0, 0});
    const double clean = grover::run(problem, false).success_probability;
    const double noisy = leakage::grover_unitary_leak_success(problem, 0.2);
    EXPECT_LT(noisy, clean);
    EXPECT_GT(noisy, 0.5 * clean);
}

TEST(leakage, sweep_rows_shape) {
    leakage::Config config;
    config.model = leakage::Model::Erasure;
    config.p_l = 0.0001;
    config.trials = 100;
    config.seed = 5;
    const auto rows = leakage::sweep(config, 2, 2, 12);
    ASSERT_EQ(rows.size(), 11u);
    for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
        EXPECT_GT(rows[i].analytic_survival, rows[i + 1].analytic_survival);
    }
    // analytic column is filled everywhere, MC only at desk scale
    EXPECT_TRUE(rows.front().mc_available);
    EXPECT_FALSE(rows.back().mc_available);
    for (const auto &row : rows) {
        EXPECT_GT(row.analytic_survival, 0.0);
        EXPECT_LE(row.analytic_survival, 1.0);
    }
}

TEST(leakage, sweep_with_zero_probability_is_flat_one) {
    leakage::Config config;
    config.model = leakage::Model::Erasure;
    config.p_l = 0.0;
    config.trials = 50;
    const auto rows = leakage::sweep(config, 2, 2, 6);
    for (const auto &row : rows) {
        EXPECT_EQ(row.analytic_survival, 1.0);
    }
}

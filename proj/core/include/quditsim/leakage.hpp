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

#ifndef QUDITSIM_LEAKAGE_HPP
#define QUDITSIM_LEAKAGE_HPP

#include <cstdint>
#include <vector>

#include "quditsim/gates.hpp"
#include "quditsim/grover.hpp"
#include "quditsim/rng.hpp"
#include "quditsim/statevector.hpp"
#include "quditsim/toffoli.hpp"

namespace quditsim::leakage {

enum class Model { Unitary, Erasure };

struct Config {
    Model model = Model::Erasure;
    double p_l = 0.0;      // per-opportunity leak probability (erasure)
    double t = 0.0;        // coupling duration in radians (unitary)
    std::uint64_t seed = 0;
    int trials = 1;
    int leak_level_offset = 0;  // 0 leaks to level d, 1 to level d+1
};

/// exp(-iHt) for the coupling H = (|d><d-1| + |d-1><d|)/2 on one
/// (d+2)-level wire: a cos/sin block on levels {d-1, d}, identity elsewhere.
gates::UnitaryMatrix unitary_leak_op(double t, int d);

/// Probability mass in the leakage subspace {d, d+1} of one wire.
double leakage_rate(const StateVector &state, std::size_t wire, int d);

/// With probability p_l, resets the wire to the leak level: samples the
/// wire's digit from its marginal, projects, then relabels the digit to
/// `leak_level`. Returns whether the leak fired.
bool erasure_step(StateVector &state, std::size_t wire, double p_l, Rng &rng, int leak_level);

/// Probability that no erasure event fires across a whole search run:
/// (1 - p_l)^(2*ceil(log2 n)*sqrt(d^n)).
double analytic_survival(int n, int d, double p_l);

/// Noise insertion points derived from a carrier-tree cycle schedule: one
/// opportunity per tree level per half (on the level's designated carrier)
/// plus one at the root. This matches the 2*ceil(log2 n) leak opportunities
/// per decomposed gate that the survival formula counts.
struct LeakEvent {
    std::size_t after_op = 0;
    std::size_t wire = 0;
};

std::vector<LeakEvent> leak_events(const std::vector<toffoli::Cycle> &cycles);

struct SweepRow {
    int n = 0;
    double search_space = 0.0;  // N = d^n
    double p_l = 0.0;
    double analytic_survival = 0.0;
    bool mc_available = false;
    double mc_success = 0.0;
    double mc_stderr = 0.0;
    int trials = 0;
    std::uint64_t seed = 0;
};

/// Monte Carlo estimate of search success under the erasure channel: each
/// trajectory runs the full search with erasure opportunities at the leak
/// events of both lowered multi-controlled gates. mc_success is the mean
/// final marked-state probability, mc_stderr the sample standard error.
/// Guarded at d^n <= 2^18.
SweepRow grover_erasure_mc(const grover::Problem &problem, double p_l, int trials, std::uint64_t seed,
                           int leak_level_offset = 0);

/// Deterministic success probability with the unitary coupling applied at
/// every leak event instead of the stochastic reset.
double grover_unitary_leak_success(const grover::Problem &problem, double t);

/// One row per n in [n_min, n_max]. The analytic column is always filled for
/// the erasure model; the Monte Carlo column is filled where the state fits
/// the desk-scale guards.
std::vector<SweepRow> sweep(const Config &config, int d, int n_min, int n_max);

}  // namespace quditsim::leakage

#endif

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

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "quditsim/error.hpp"

namespace quditsim::leakage {

namespace {

constexpr std::uint64_t kMcSearchGuard = std::uint64_t{1} << 18;
constexpr std::uint64_t kMcStateGuard = std::uint64_t{1} << 22;

std::uint64_t pow_u64(int base, int exp) {
    std::uint64_t out = 1;
    for (int i = 0; i < exp; ++i) {
        out *= static_cast<std::uint64_t>(base);
    }
    return out;
}

int ceil_log2(int n) {
    return std::bit_width(static_cast<unsigned>(n - 1));
}

}  // namespace

gates::UnitaryMatrix unitary_leak_op(double t, int d) {
    if (d < 2) {
        throw std::invalid_argument("dimension must be >= 2");
    }
    const std::size_t phys = static_cast<std::size_t>(d) + 2;
    gates::UnitaryMatrix m = gates::UnitaryMatrix::identity(phys);
    const std::size_t a = static_cast<std::size_t>(d) - 1;
    const std::size_t b = static_cast<std::size_t>(d);
    const double c = std::cos(t / 2.0);
    const double s = std::sin(t / 2.0);
    m.at(a, a) = c;
    m.at(b, b) = c;
    m.at(a, b) = cdouble{0.0, -s};
    m.at(b, a) = cdouble{0.0, -s};
    return m;
}

double leakage_rate(const StateVector &state, std::size_t wire, int d) {
    const int levels[2] = {d, d + 1};
    return subspace_mass(state, wire, levels);
}

bool erasure_step(StateVector &state, std::size_t wire, double p_l, Rng &rng, int leak_level) {
    if (wire >= state.dims.size()) {
        throw std::invalid_argument("wire out of range");
    }
    const int dim = state.dims[wire];
    if (leak_level < 0 || leak_level >= dim) {
        throw std::invalid_argument("leak level out of range");
    }
    if (!(next_unit(rng) < p_l)) {
        return false;
    }

    std::size_t stride = 1;
    for (std::size_t w = state.dims.size(); w-- > wire + 1;) {
        stride *= static_cast<std::size_t>(state.dims[w]);
    }
    const std::size_t block = static_cast<std::size_t>(dim) * stride;

    std::vector<double> marginal(static_cast<std::size_t>(dim), 0.0);
    for (std::size_t p = 0; p < state.size(); p += block) {
        for (int digit = 0; digit < dim; ++digit) {
            const std::size_t base = p + static_cast<std::size_t>(digit) * stride;
            double acc = 0.0;
            for (std::size_t s = 0; s < stride; ++s) {
                acc += std::norm(state.amps[base + s]);
            }
            marginal[static_cast<std::size_t>(digit)] += acc;
        }
    }

    double total = 0.0;
    for (double q : marginal) {
        total += q;
    }
    const double u = next_unit(rng) * total;
    int outcome = dim - 1;
    double acc = 0.0;
    for (int digit = 0; digit < dim; ++digit) {
        acc += marginal[static_cast<std::size_t>(digit)];
        if (u < acc) {
            outcome = digit;
            break;
        }
    }

    // Project onto the sampled digit, renormalize and relabel it to the leak
    // level: the trajectory realization of replacing the wire's state.
    const double scale = 1.0 / std::sqrt(marginal[static_cast<std::size_t>(outcome)]);
    for (std::size_t p = 0; p < state.size(); p += block) {
        const std::size_t src = p + static_cast<std::size_t>(outcome) * stride;
        const std::size_t dst = p + static_cast<std::size_t>(leak_level) * stride;
        for (std::size_t s = 0; s < stride; ++s) {
            const cdouble value = state.amps[src + s] * scale;
            state.amps[src + s] = cdouble{};
            state.amps[dst + s] = value;
        }
        for (int digit = 0; digit < dim; ++digit) {
            if (digit == leak_level) {
                continue;
            }
            const std::size_t base = p + static_cast<std::size_t>(digit) * stride;
            for (std::size_t s = 0; s < stride; ++s) {
                state.amps[base + s] = cdouble{};
            }
        }
    }
    return true;
}

double analytic_survival(int n, int d, double p_l) {
    if (n < 2 || d < 2) {
        throw std::invalid_argument("survival formula needs n >= 2, d >= 2");
    }
    if (p_l < 0.0 || p_l > 1.0) {
        throw std::invalid_argument("p_l must lie in [0, 1]");
    }
    const double exponent =
        2.0 * ceil_log2(n) * std::sqrt(std::pow(static_cast<double>(d), n));
    return std::pow(1.0 - p_l, exponent);
}

std::vector<LeakEvent> leak_events(const std::vector<toffoli::Cycle> &cycles) {
    std::vector<LeakEvent> events;
    for (const toffoli::Cycle &cycle : cycles) {
        if (cycle.level_last || cycle.is_root) {
            events.push_back({cycle.end, cycle.path_wire});
        }
    }
    return events;
}

namespace {

struct NoisySegment {
    const Circuit *circuit;
    std::vector<LeakEvent> events;  // sorted by after_op
};

// Applies a circuit with per-event noise injected at the event boundaries.
template <typename FireFn>
void run_noisy(StateVector &state, const NoisySegment &segment, FireFn &&fire) {
    std::size_t next_event = 0;
    for (std::size_t i = 0; i < segment.circuit->ops.size(); ++i) {
        apply(state, segment.circuit->ops[i]);
        while (next_event < segment.events.size() && segment.events[next_event].after_op == i + 1) {
            fire(segment.events[next_event].wire);
            ++next_event;
        }
    }
}

void require_mc_guards(const grover::Problem &problem) {
    const std::uint64_t search = pow_u64(problem.d, problem.n);
    if (search > kMcSearchGuard) {
        throw ResourceError("Monte Carlo guarded at d^n <= 2^18");
    }
    const std::uint64_t phys = pow_u64(problem.d + 2, problem.n);
    if (phys > kMcStateGuard) {
        throw ResourceError("Monte Carlo state size guarded at (d+2)^n <= 2^22");
    }
}

StateVector uniform_start(const grover::Problem &problem) {
    std::vector<int> dims(static_cast<std::size_t>(problem.n), problem.d + 2);
    std::vector<int> zeros(static_cast<std::size_t>(problem.n), 0);
    StateVector state = prepare_basis(dims, zeros);
    for (std::size_t w = 0; w < dims.size(); ++w) {
        apply(state, SingleOp{w, SingleKind::F, problem.d});
    }
    return state;
}

}  // namespace

SweepRow grover_erasure_mc(const grover::Problem &problem, double p_l, int trials, std::uint64_t seed,
                           int leak_level_offset) {
    if (trials < 1) {
        throw std::invalid_argument("trials must be >= 1");
    }
    require_mc_guards(problem);
    const int leak_level = problem.d + leak_level_offset;

    const grover::ScheduledCircuit oracle = grover::build_oracle_scheduled(problem);
    const grover::ScheduledCircuit diffusion = grover::build_diffusion_scheduled(problem.n, problem.d);
    const NoisySegment oracle_seg{&oracle.circuit, leak_events(oracle.cycles)};
    const NoisySegment diffusion_seg{&diffusion.circuit, leak_events(diffusion.cycles)};

    std::vector<double> outcomes(static_cast<std::size_t>(trials));
    for (int trial = 0; trial < trials; ++trial) {
        Rng rng = make_stream_rng(seed, static_cast<std::uint64_t>(trial));
        StateVector state = uniform_start(problem);
        for (int round = 0; round < problem.iterations; ++round) {
            auto fire = [&](std::size_t wire) { erasure_step(state, wire, p_l, rng, leak_level); };
            run_noisy(state, oracle_seg, fire);
            run_noisy(state, diffusion_seg, fire);
        }
        outcomes[static_cast<std::size_t>(trial)] = probability_of(state, problem.marked);
    }

    double mean = 0.0;
    for (double x : outcomes) {
        mean += x;
    }
    mean /= static_cast<double>(trials);
    double var = 0.0;
    for (double x : outcomes) {
        var += (x - mean) * (x - mean);
    }
    var = trials > 1 ? var / static_cast<double>(trials - 1) : 0.0;

    SweepRow row;
    row.n = problem.n;
    row.search_space = std::pow(static_cast<double>(problem.d), problem.n);
    row.p_l = p_l;
    row.analytic_survival = problem.n >= 2 ? analytic_survival(problem.n, problem.d, p_l)
                                           : std::numeric_limits<double>::quiet_NaN();
    row.mc_available = true;
    row.mc_success = mean;
    row.mc_stderr = std::sqrt(var / static_cast<double>(trials));
    row.trials = trials;
    row.seed = seed;
    return row;
}

double grover_unitary_leak_success(const grover::Problem &problem, double t) {
    require_mc_guards(problem);
    const gates::UnitaryMatrix leak = unitary_leak_op(t, problem.d);

    const grover::ScheduledCircuit oracle = grover::build_oracle_scheduled(problem);
    const grover::ScheduledCircuit diffusion = grover::build_diffusion_scheduled(problem.n, problem.d);
    const NoisySegment oracle_seg{&oracle.circuit, leak_events(oracle.cycles)};
    const NoisySegment diffusion_seg{&diffusion.circuit, leak_events(diffusion.cycles)};

    StateVector state = uniform_start(problem);
    auto fire = [&](std::size_t wire) { apply_dense_single(state, wire, leak); };
    for (int round = 0; round < problem.iterations; ++round) {
        run_noisy(state, oracle_seg, fire);
        run_noisy(state, diffusion_seg, fire);
    }
    return probability_of(state, problem.marked);
}

std::vector<SweepRow> sweep(const Config &config, int d, int n_min, int n_max) {
    if (n_min < 2 || n_max < n_min) {
        throw std::invalid_argument("need 2 <= n_min <= n_max");
    }
    std::vector<SweepRow> rows;
    for (int n = n_min; n <= n_max; ++n) {
        SweepRow row;
        row.n = n;
        row.search_space = std::pow(static_cast<double>(d), n);
        row.p_l = config.p_l;
        row.analytic_survival = config.model == Model::Erasure
                                    ? analytic_survival(n, d, config.p_l)
                                    : std::numeric_limits<double>::quiet_NaN();
        row.trials = config.trials;
        row.seed = config.seed;

        const bool feasible = pow_u64(d, n) <= kMcSearchGuard && pow_u64(d + 2, n) <= kMcStateGuard;
        if (feasible) {
            std::vector<int> marked(static_cast<std::size_t>(n), 0);
            grover::Problem problem = grover::make_problem(n, d, marked);
            if (config.model == Model::Erasure) {
                SweepRow mc = grover_erasure_mc(problem, config.p_l, config.trials, config.seed,
                                                config.leak_level_offset);
                row.mc_available = true;
                row.mc_success = mc.mc_success;
                row.mc_stderr = mc.mc_stderr;
            } else {
                row.mc_available = true;
                row.mc_success = grover_unitary_leak_success(problem, config.t);
                row.mc_stderr = 0.0;
                row.trials = 1;
            }
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace quditsim::leakage

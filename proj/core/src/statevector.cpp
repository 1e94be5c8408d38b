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

#include "quditsim/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "quditsim/error.hpp"

namespace quditsim {

namespace {

constexpr double kBasisOffAmpTol = 1e-10;
constexpr double kMeasureNormTol = 1e-6;
constexpr std::size_t kTotalDimLimit = std::size_t{1} << 26;

std::size_t stride_of(std::span<const int> dims, std::size_t wire) {
    std::size_t s = 1;
    for (std::size_t w = dims.size(); w-- > wire + 1;) {
        s *= static_cast<std::size_t>(dims[w]);
    }
    return s;
}

std::size_t total_of(std::span<const int> dims) {
    std::size_t total = 1;
    for (int d : dims) {
        total *= static_cast<std::size_t>(d);
    }
    return total;
}

void require_wire(std::span<const int> dims, std::size_t wire) {
    if (wire >= dims.size()) {
        throw std::invalid_argument("wire " + std::to_string(wire) + " out of range");
    }
}

void require_modulus(std::span<const int> dims, std::size_t wire, int modulus) {
    if (modulus < 2 || modulus > dims[wire]) {
        throw std::invalid_argument("modulus " + std::to_string(modulus) + " out of range for wire " +
                                    std::to_string(wire));
    }
}

void require_value(std::span<const int> dims, std::size_t wire, int value) {
    if (value < 0 || value >= dims[wire]) {
        throw std::invalid_argument("value " + std::to_string(value) + " out of range for wire " +
                                    std::to_string(wire));
    }
}

// Visits every index whose digit on `wire` is `value`; the wire's other
// levels live at offsets of the wire stride from the visited index.
template <typename F>
void for_each_with_digit(std::span<const int> dims, std::size_t total, std::size_t wire, int value, F &&fn) {
    const std::size_t stride = stride_of(dims, wire);
    const std::size_t dim = static_cast<std::size_t>(dims[wire]);
    const std::size_t block = dim * stride;
    const std::size_t offset = static_cast<std::size_t>(value) * stride;
    for (std::size_t p = 0; p < total; p += block) {
        const std::size_t base = p + offset;
        for (std::size_t s = 0; s < stride; ++s) {
            fn(base + s);
        }
    }
}

// Visits every index whose digits on two distinct wires are fixed.
template <typename F>
void for_each_with_digits2(std::span<const int> dims, std::size_t total, std::size_t wire_a, int value_a,
                           std::size_t wire_b, int value_b, F &&fn) {
    if (wire_a > wire_b) {
        std::swap(wire_a, wire_b);
        std::swap(value_a, value_b);
    }
    const std::size_t sa = stride_of(dims, wire_a);
    const std::size_t sb = stride_of(dims, wire_b);
    const std::size_t block_a = static_cast<std::size_t>(dims[wire_a]) * sa;
    const std::size_t block_b = static_cast<std::size_t>(dims[wire_b]) * sb;
    for (std::size_t p1 = 0; p1 < total; p1 += block_a) {
        const std::size_t base1 = p1 + static_cast<std::size_t>(value_a) * sa;
        for (std::size_t p2 = 0; p2 < sa; p2 += block_b) {
            const std::size_t base2 = base1 + p2 + static_cast<std::size_t>(value_b) * sb;
            for (std::size_t p3 = 0; p3 < sb; ++p3) {
                fn(base2 + p3);
            }
        }
    }
}

void rotate_orbit(std::vector<cdouble> &amps, std::size_t base, std::size_t stride, int modulus, int delta,
                  std::vector<cdouble> &scratch) {
    scratch.resize(static_cast<std::size_t>(modulus));
    for (int k = 0; k < modulus; ++k) {
        scratch[static_cast<std::size_t>(k)] = amps[base + static_cast<std::size_t>(k) * stride];
    }
    for (int k = 0; k < modulus; ++k) {
        const int src = (k - delta + modulus) % modulus;
        amps[base + static_cast<std::size_t>(k) * stride] = scratch[static_cast<std::size_t>(src)];
    }
}

void apply_single(StateVector &state, const SingleOp &op) {
    require_wire(state.dims, op.wire);
    require_modulus(state.dims, op.wire, op.modulus);
    const std::size_t stride = stride_of(state.dims, op.wire);
    const int m = op.modulus;

    switch (op.kind) {
        case SingleKind::X:
        case SingleKind::Xinv: {
            const int delta = op.kind == SingleKind::X ? +1 : -1;
            std::vector<cdouble> scratch;
            for_each_with_digit(state.dims, state.size(), op.wire, 0, [&](std::size_t base) {
                rotate_orbit(state.amps, base, stride, m, delta, scratch);
            });
            break;
        }
        case SingleKind::Z: {
            for (int k = 1; k < m; ++k) {
                const cdouble w = gates::omega(m, k);
                for_each_with_digit(state.dims, state.size(), op.wire, k,
                                    [&](std::size_t idx) { state.amps[idx] *= w; });
            }
            break;
        }
        case SingleKind::F:
        case SingleKind::Finv: {
            gates::UnitaryMatrix f = gates::build_f(m);
            if (op.kind == SingleKind::Finv) {
                f = gates::dagger(f);
            }
            std::vector<cdouble> scratch(static_cast<std::size_t>(m));
            for_each_with_digit(state.dims, state.size(), op.wire, 0, [&](std::size_t base) {
                for (int r = 0; r < m; ++r) {
                    cdouble acc{};
                    for (int c = 0; c < m; ++c) {
                        acc += f.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) *
                               state.amps[base + static_cast<std::size_t>(c) * stride];
                    }
                    scratch[static_cast<std::size_t>(r)] = acc;
                }
                for (int r = 0; r < m; ++r) {
                    state.amps[base + static_cast<std::size_t>(r) * stride] = scratch[static_cast<std::size_t>(r)];
                }
            });
            break;
        }
    }
}

void apply_cinc(StateVector &state, const CincOp &op) {
    require_wire(state.dims, op.control);
    require_wire(state.dims, op.target);
    if (op.control == op.target) {
        throw std::invalid_argument("cinc control and target must differ");
    }
    require_value(state.dims, op.control, op.control_value);
    require_modulus(state.dims, op.target, op.modulus);
    if (op.delta != 1 && op.delta != -1) {
        throw std::invalid_argument("cinc delta must be +1 or -1");
    }
    const std::size_t stride_t = stride_of(state.dims, op.target);
    std::vector<cdouble> scratch;
    for_each_with_digits2(state.dims, state.size(), op.control, op.control_value, op.target, 0,
                          [&](std::size_t base) {
                              rotate_orbit(state.amps, base, stride_t, op.modulus, op.delta, scratch);
                          });
}

// Odometer over the full index space; keeps the digit string in sync with the
// linear index so multi-wire predicates need no division.
template <typename F>
void scan_all(std::span<const int> dims, std::size_t total, F &&fn) {
    std::vector<int> digits(dims.size(), 0);
    for (std::size_t idx = 0; idx < total; ++idx) {
        fn(idx, digits);
        for (std::size_t w = dims.size(); w-- > 0;) {
            if (++digits[w] < dims[w]) {
                break;
            }
            digits[w] = 0;
        }
    }
}

void apply_cphase(StateVector &state, const CphaseOp &op) {
    for (const ControlTerm &term : op.controls) {
        require_wire(state.dims, term.wire);
        require_value(state.dims, term.wire, term.value);
    }
    require_wire(state.dims, op.target);
    require_value(state.dims, op.target, op.target_value);
    const cdouble factor = std::polar(1.0, op.phase);
    scan_all(state.dims, state.size(), [&](std::size_t idx, const std::vector<int> &digits) {
        if (digits[op.target] != op.target_value) {
            return;
        }
        for (const ControlTerm &term : op.controls) {
            if (digits[term.wire] != term.value) {
                return;
            }
        }
        state.amps[idx] *= factor;
    });
}

void apply_multi_inc(StateVector &state, const MultiIncOp &op) {
    if (op.controls.empty()) {
        throw std::invalid_argument("minc needs at least one control");
    }
    for (std::size_t c : op.controls) {
        require_wire(state.dims, c);
        require_value(state.dims, c, op.control_value);
    }
    require_wire(state.dims, op.target);
    require_modulus(state.dims, op.target, op.modulus);
    const std::size_t stride_t = stride_of(state.dims, op.target);
    std::vector<cdouble> scratch;
    std::vector<std::size_t> strides(op.controls.size());
    std::vector<std::size_t> cdims(op.controls.size());
    for (std::size_t k = 0; k < op.controls.size(); ++k) {
        strides[k] = stride_of(state.dims, op.controls[k]);
        cdims[k] = static_cast<std::size_t>(state.dims[op.controls[k]]);
    }
    for_each_with_digit(state.dims, state.size(), op.target, 0, [&](std::size_t base) {
        for (std::size_t k = 0; k < strides.size(); ++k) {
            if ((base / strides[k]) % cdims[k] != static_cast<std::size_t>(op.control_value)) {
                return;
            }
        }
        rotate_orbit(state.amps, base, stride_t, op.modulus, +1, scratch);
    });
}

}  // namespace

double StateVector::norm_sq() const {
    double n = 0.0;
    for (const cdouble &a : amps) {
        n += std::norm(a);
    }
    return n;
}

std::size_t encode_digits(std::span<const int> dims, std::span<const int> digits) {
    if (digits.size() != dims.size()) {
        throw std::invalid_argument("digit count does not match wire count");
    }
    std::size_t idx = 0;
    for (std::size_t w = 0; w < dims.size(); ++w) {
        if (digits[w] < 0 || digits[w] >= dims[w]) {
            throw std::invalid_argument("digit " + std::to_string(digits[w]) + " out of range on wire " +
                                        std::to_string(w));
        }
        idx = idx * static_cast<std::size_t>(dims[w]) + static_cast<std::size_t>(digits[w]);
    }
    return idx;
}

std::vector<int> decode_index(std::span<const int> dims, std::size_t index) {
    std::vector<int> digits(dims.size());
    for (std::size_t w = dims.size(); w-- > 0;) {
        digits[w] = static_cast<int>(index % static_cast<std::size_t>(dims[w]));
        index /= static_cast<std::size_t>(dims[w]);
    }
    if (index != 0) {
        throw std::invalid_argument("index out of range");
    }
    return digits;
}

StateVector prepare_basis(std::vector<int> dims, std::span<const int> digits) {
    for (int d : dims) {
        if (d < 1) {
            throw std::invalid_argument("wire dimension must be >= 1");
        }
    }
    const std::size_t total = total_of(dims);
    if (total > kTotalDimLimit) {
        throw ResourceError("total Hilbert dimension exceeds 2^26");
    }
    StateVector state;
    state.dims = std::move(dims);
    state.amps.assign(total, cdouble{});
    state.amps[encode_digits(state.dims, digits)] = 1.0;
    return state;
}

void apply(StateVector &state, const GateOp &op) {
    if (const auto *s = std::get_if<SingleOp>(&op)) {
        apply_single(state, *s);
    } else if (const auto *c = std::get_if<CincOp>(&op)) {
        apply_cinc(state, *c);
    } else if (const auto *p = std::get_if<CphaseOp>(&op)) {
        apply_cphase(state, *p);
    } else if (const auto *m = std::get_if<MultiIncOp>(&op)) {
        apply_multi_inc(state, *m);
    }
}

void apply_dense_single(StateVector &state, std::size_t wire, const gates::UnitaryMatrix &matrix) {
    require_wire(state.dims, wire);
    const std::size_t dim = static_cast<std::size_t>(state.dims[wire]);
    if (matrix.dim != dim) {
        throw std::invalid_argument("matrix dimension does not match wire dimension");
    }
    const std::size_t stride = stride_of(state.dims, wire);
    std::vector<cdouble> scratch(dim);
    for_each_with_digit(state.dims, state.size(), wire, 0, [&](std::size_t base) {
        for (std::size_t r = 0; r < dim; ++r) {
            cdouble acc{};
            for (std::size_t c = 0; c < dim; ++c) {
                acc += matrix.at(r, c) * state.amps[base + c * stride];
            }
            scratch[r] = acc;
        }
        for (std::size_t r = 0; r < dim; ++r) {
            state.amps[base + r * stride] = scratch[r];
        }
    });
}

void apply_to_basis(std::span<const int> dims, std::span<int> digits, const GateOp &op) {
    if (digits.size() != dims.size()) {
        throw std::invalid_argument("digit count does not match wire count");
    }
    if (const auto *s = std::get_if<SingleOp>(&op)) {
        require_wire(dims, s->wire);
        require_modulus(dims, s->wire, s->modulus);
        int &digit = digits[s->wire];
        switch (s->kind) {
            case SingleKind::X:
                if (digit < s->modulus) {
                    digit = (digit + 1) % s->modulus;
                }
                break;
            case SingleKind::Xinv:
                if (digit < s->modulus) {
                    digit = (digit + s->modulus - 1) % s->modulus;
                }
                break;
            case SingleKind::Z:
                break;  // phase only; the label is unchanged
            case SingleKind::F:
            case SingleKind::Finv:
                throw std::invalid_argument("Fourier gate is not a basis permutation");
        }
    } else if (const auto *c = std::get_if<CincOp>(&op)) {
        require_wire(dims, c->control);
        require_wire(dims, c->target);
        if (digits[c->control] == c->control_value && digits[c->target] < c->modulus) {
            digits[c->target] = (digits[c->target] + c->modulus + c->delta) % c->modulus;
        }
    } else if (std::get_if<CphaseOp>(&op)) {
        // phase only; the label is unchanged
    } else if (const auto *m = std::get_if<MultiIncOp>(&op)) {
        require_wire(dims, m->target);
        for (std::size_t w : m->controls) {
            require_wire(dims, w);
            if (digits[w] != m->control_value) {
                return;
            }
        }
        if (digits[m->target] < m->modulus) {
            digits[m->target] = (digits[m->target] + 1) % m->modulus;
        }
    }
}

std::string format_digits(std::span<const int> dims, std::span<const int> digits) {
    bool compact = true;
    for (int d : dims) {
        if (d > 10) {
            compact = false;
            break;
        }
    }
    std::string out;
    for (std::size_t w = 0; w < digits.size(); ++w) {
        if (compact) {
            out.push_back(static_cast<char>('0' + digits[w]));
        } else {
            if (w) {
                out.push_back(',');
            }
            out += std::to_string(digits[w]);
        }
    }
    return out;
}

std::vector<int> parse_digit_string(std::string_view text, std::span<const int> dims) {
    bool compact = true;
    for (int d : dims) {
        if (d > 10) {
            compact = false;
            break;
        }
    }
    std::vector<int> digits;
    if (compact) {
        for (char ch : text) {
            if (ch < '0' || ch > '9') {
                throw std::invalid_argument(std::string("bad digit character '") + ch + "'");
            }
            digits.push_back(ch - '0');
        }
    } else {
        std::string buf(text);
        std::istringstream in(buf);
        std::string part;
        while (std::getline(in, part, ',')) {
            digits.push_back(std::stoi(part));
        }
    }
    if (digits.size() != dims.size()) {
        throw std::invalid_argument("expected " + std::to_string(dims.size()) + " digits, got " +
                                    std::to_string(digits.size()));
    }
    for (std::size_t w = 0; w < digits.size(); ++w) {
        if (digits[w] < 0 || digits[w] >= dims[w]) {
            throw std::invalid_argument("digit " + std::to_string(digits[w]) + " out of range on wire " +
                                        std::to_string(w));
        }
    }
    return digits;
}

std::optional<std::vector<int>> basis_digits_of(const StateVector &state) {
    std::size_t best = 0;
    double best_mag = -1.0;
    for (std::size_t i = 0; i < state.size(); ++i) {
        const double mag = std::abs(state.amps[i]);
        if (mag > best_mag) {
            best_mag = mag;
            best = i;
        }
    }
    for (std::size_t i = 0; i < state.size(); ++i) {
        if (i != best && std::abs(state.amps[i]) > kBasisOffAmpTol) {
            return std::nullopt;
        }
    }
    return decode_index(state.dims, best);
}

namespace {

std::string state_label(const StateVector &state) {
    auto digits = basis_digits_of(state);
    if (!digits) {
        return "superposed";
    }
    return format_digits(state.dims, *digits);
}

}  // namespace

std::vector<TraceRecord> run(const Circuit &circuit, StateVector &state, bool trace,
                             std::span<const std::size_t> cycle_ends) {
    if (circuit.wires.size() != state.dims.size()) {
        throw std::invalid_argument("circuit wire count does not match state");
    }
    for (std::size_t w = 0; w < circuit.wires.size(); ++w) {
        if (circuit.wires[w].physical_dim != state.dims[w]) {
            throw std::invalid_argument("wire " + std::to_string(w) + " dimension mismatch");
        }
    }
    for (std::size_t k = 0; k < cycle_ends.size(); ++k) {
        const std::size_t prev = k ? cycle_ends[k - 1] : 0;
        if (cycle_ends[k] <= prev || cycle_ends[k] > circuit.ops.size()) {
            throw std::invalid_argument("cycle boundaries must be strictly increasing");
        }
    }
    if (!cycle_ends.empty() && cycle_ends.back() != circuit.ops.size()) {
        throw std::invalid_argument("cycle boundaries must cover all ops");
    }

    std::vector<TraceRecord> records;
    std::size_t next_op = 0;
    for (std::size_t cycle = 0; cycle < cycle_ends.size(); ++cycle) {
        while (next_op < cycle_ends[cycle]) {
            apply(state, circuit.ops[next_op++]);
        }
        if (trace) {
            records.push_back({cycle + 1, state_label(state)});
        }
    }
    return records;
}

std::vector<TraceRecord> run(const Circuit &circuit, StateVector &state, bool trace) {
    std::vector<std::size_t> cycle_ends(circuit.ops.size());
    for (std::size_t i = 0; i < cycle_ends.size(); ++i) {
        cycle_ends[i] = i + 1;
    }
    return run(circuit, state, trace, cycle_ends);
}

double probability_of(const StateVector &state, std::span<const int> digits) {
    return std::norm(state.amps[encode_digits(state.dims, digits)]);
}

std::vector<int> measure_all(const StateVector &state, Rng &rng) {
    const double norm = state.norm_sq();
    if (std::abs(norm - 1.0) > kMeasureNormTol) {
        throw IntegrityError("state norm " + std::to_string(norm) + " too far from 1 to sample");
    }
    const double u = next_unit(rng) * norm;
    double acc = 0.0;
    std::size_t chosen = state.size() - 1;
    for (std::size_t i = 0; i < state.size(); ++i) {
        acc += std::norm(state.amps[i]);
        if (u < acc) {
            chosen = i;
            break;
        }
    }
    return decode_index(state.dims, chosen);
}

double subspace_mass(const StateVector &state, std::size_t wire, std::span<const int> levels) {
    require_wire(state.dims, wire);
    for (int level : levels) {
        require_value(state.dims, wire, level);
    }
    double mass = 0.0;
    for (int level : levels) {
        for_each_with_digit(state.dims, state.size(), wire, level,
                            [&](std::size_t idx) { mass += std::norm(state.amps[idx]); });
    }
    return mass;
}

ComputationalMatrix extract_computational_matrix(const Circuit &circuit, int d) {
    const std::size_t wires = circuit.wires.size();
    std::size_t comp_total = 1;
    for (std::size_t w = 0; w < wires; ++w) {
        comp_total *= static_cast<std::size_t>(d);
        if (comp_total > 4096) {
            throw ResourceError("computational matrix guarded at d^wires <= 4096");
        }
    }
    std::vector<int> phys_dims;
    std::vector<int> comp_dims(wires, d);
    for (const WireSpec &spec : circuit.wires) {
        phys_dims.push_back(spec.physical_dim);
    }

    ComputationalMatrix out;
    out.matrix = gates::UnitaryMatrix(comp_total);
    for (std::size_t col = 0; col < comp_total; ++col) {
        const std::vector<int> digits = decode_index(comp_dims, col);
        StateVector state = prepare_basis(phys_dims, digits);
        for (const GateOp &op : circuit.ops) {
            apply(state, op);
        }
        double captured = 0.0;
        for (std::size_t row = 0; row < comp_total; ++row) {
            const std::vector<int> row_digits = decode_index(comp_dims, row);
            const cdouble amp = state.amps[encode_digits(phys_dims, row_digits)];
            out.matrix.at(row, col) = amp;
            captured += std::norm(amp);
        }
        out.max_off_subspace = std::max(out.max_off_subspace, state.norm_sq() - captured);
    }
    return out;
}

}  // namespace quditsim

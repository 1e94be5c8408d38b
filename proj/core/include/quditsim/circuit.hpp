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

#ifndef QUDITSIM_CIRCUIT_HPP
#define QUDITSIM_CIRCUIT_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "quditsim/error.hpp"

namespace quditsim {

/// One wire of a circuit. Computation lives on the first `logical_dim`
/// levels; the two extra physical levels house the carrier states the
/// multi-controlled decomposition raises wires into, and double as the
/// leakage subspace for the noise models.
struct WireSpec {
    int logical_dim = 2;
    int physical_dim = 4;

    static WireSpec with_logical(int d);

    bool operator==(const WireSpec &) const = default;
};

enum class SingleKind : std::uint8_t { X, Xinv, Z, F, Finv };

/// Token used for this kind in the .qdc format ("x", "xinv", "z", "f", "finv").
const char *single_kind_token(SingleKind kind);

/// One-qudit gate acting on the first `modulus` levels of a wire; levels at or
/// above `modulus` are left untouched (block-diagonal extension).
struct SingleOp {
    std::size_t wire = 0;
    SingleKind kind = SingleKind::X;
    int modulus = 2;

    bool operator==(const SingleOp &) const = default;
};

/// Controlled increment: adds `delta` (+1 or -1) to the target modulo
/// `modulus` iff the control wire holds exactly `control_value` and the
/// target digit is below `modulus`.
struct CincOp {
    std::size_t control = 0;
    int control_value = 0;
    std::size_t target = 0;
    int modulus = 2;
    int delta = +1;

    CincOp inverted() const {
        CincOp inv = *this;
        inv.delta = -delta;
        return inv;
    }

    bool operator==(const CincOp &) const = default;
};

struct ControlTerm {
    std::size_t wire = 0;
    int value = 0;

    bool operator==(const ControlTerm &) const = default;
};

/// Diagonal phase: multiplies the amplitude by e^{i*phase} iff every control
/// wire holds its stated value and the target wire holds `target_value`.
struct CphaseOp {
    std::vector<ControlTerm> controls;
    std::size_t target = 0;
    int target_value = 0;
    double phase = 0.0;

    bool operator==(const CphaseOp &) const = default;
};

/// Pre-decomposition multi-controlled increment: target += 1 (mod `modulus`)
/// iff every control wire holds `control_value`.
struct MultiIncOp {
    std::vector<std::size_t> controls;
    int control_value = 0;
    std::size_t target = 0;
    int modulus = 2;

    bool operator==(const MultiIncOp &) const = default;
};

using GateOp = std::variant<SingleOp, CincOp, CphaseOp, MultiIncOp>;

/// All wire indices an op reads or writes.
std::vector<std::size_t> op_wires(const GateOp &op);
bool op_touches_wire(const GateOp &op, std::size_t wire);

struct Circuit {
    std::vector<WireSpec> wires;
    std::vector<GateOp> ops;

    bool operator==(const Circuit &) const = default;
};

/// One broken invariant. `op_index` is kNoOp for wire-table problems.
struct Violation {
    static constexpr std::size_t kNoOp = static_cast<std::size_t>(-1);

    std::size_t op_index = kNoOp;
    std::string rule;
};

std::string to_string(const Violation &violation);

/// Structural validation. Empty result iff every invariant holds; violations
/// are data, not failures.
std::vector<Violation> validate(const Circuit &circuit);

/// Serializes to the .qdc text format. Deterministic: identical circuits
/// produce identical bytes. Throws std::invalid_argument listing the
/// violations if the circuit does not validate.
std::string emit(const Circuit &circuit);

/// Parses .qdc text. Inverse of emit on its image; rejects unknown
/// directives. Throws ParseError with the 1-based line number.
Circuit parse(std::string_view text);

}  // namespace quditsim

#endif

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

#ifndef QUDITSIM_STATEVECTOR_HPP
#define QUDITSIM_STATEVECTOR_HPP

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "quditsim/circuit.hpp"
#include "quditsim/gates.hpp"
#include "quditsim/rng.hpp"

namespace quditsim {

using cdouble = std::complex<double>;

/// Exact mixed-radix state vector. Wire 0 is the most significant digit, so
/// basis labels read left to right like the digit strings in circuit
/// diagrams. A state is mutated by at most one thread at a time; distinct
/// states may be processed concurrently.
struct StateVector {
    std::vector<int> dims;
    std::vector<cdouble> amps;

    std::size_t size() const {
        return amps.size();
    }
    double norm_sq() const;
};

/// Mixed-radix index of a digit string.
std::size_t encode_digits(std::span<const int> dims, std::span<const int> digits);
std::vector<int> decode_index(std::span<const int> dims, std::size_t index);

/// |digits> with amplitude exactly 1. Throws std::invalid_argument on a digit
/// out of range and ResourceError past the total-dimension guard (2^26).
StateVector prepare_basis(std::vector<int> dims, std::span<const int> digits);

/// Applies one gate in place. Equivalent to multiplying by the full
/// tensor-product operator; norm preserving.
void apply(StateVector &state, const GateOp &op);

/// Applies an arbitrary dense single-wire matrix (dim == physical dim of the
/// wire). Used by the unitary leakage channel.
void apply_dense_single(StateVector &state, std::size_t wire, const gates::UnitaryMatrix &matrix);

/// Integer fast path for permutation/diagonal gates: X, Xinv, Cinc and
/// MultiInc permute the digit string; Z and Cphase leave the label unchanged.
/// Throws std::invalid_argument for F/Finv.
void apply_to_basis(std::span<const int> dims, std::span<int> digits, const GateOp &op);

/// Digit string formatted one character per wire when every dim is <= 10,
/// comma-separated integers otherwise.
std::string format_digits(std::span<const int> dims, std::span<const int> digits);
std::vector<int> parse_digit_string(std::string_view text, std::span<const int> dims);

/// Digits of the unique basis state carrying all the amplitude, or nullopt if
/// any off amplitude exceeds 1e-10.
std::optional<std::vector<int>> basis_digits_of(const StateVector &state);

/// State label after one time cycle of a run. `state` is the formatted digit
/// string for basis states and "superposed" otherwise.
struct TraceRecord {
    std::size_t cycle = 0;
    std::string state;
};

/// Applies circuit.ops in order. With trace on, records the state label after
/// each op (cycle k = after op k).
std::vector<TraceRecord> run(const Circuit &circuit, StateVector &state, bool trace);

/// Same, but cycles are the given groups of ops: cycle_ends[k] is the total
/// op count after cycle k+1. Trace records align with those boundaries.
std::vector<TraceRecord> run(const Circuit &circuit, StateVector &state, bool trace,
                             std::span<const std::size_t> cycle_ends);

/// |amp[digits]|^2.
double probability_of(const StateVector &state, std::span<const int> digits);

/// Samples a digit string from the |amp|^2 distribution without collapsing
/// the state. Throws IntegrityError if the norm is off by more than 1e-6.
std::vector<int> measure_all(const StateVector &state, Rng &rng);

/// Total probability mass with the given wire's digit in `levels`.
double subspace_mass(const StateVector &state, std::size_t wire, std::span<const int> levels);

/// Dense matrix of the circuit restricted to the computational subspace: the
/// circuit is run on every basis input with all digits < d, and the columns
/// are read back on the same subspace. `max_off_subspace` reports the largest
/// probability mass any column left outside it. Guarded at d^wires <= 4096.
struct ComputationalMatrix {
    gates::UnitaryMatrix matrix;
    double max_off_subspace = 0.0;
};

ComputationalMatrix extract_computational_matrix(const Circuit &circuit, int d);

}  // namespace quditsim

#endif

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

#ifndef QUDITSIM_GATES_HPP
#define QUDITSIM_GATES_HPP

#include <complex>
#include <cstddef>
#include <vector>

namespace quditsim::gates {

using cdouble = std::complex<double>;

/// Dense row-major square matrix. Constructors in this module produce exact
/// desk-scale unitaries used as reference oracles and for direct small-system
/// simulation; the state-vector engine never materializes these.
struct UnitaryMatrix {
    std::size_t dim = 0;
    std::vector<cdouble> entries;

    UnitaryMatrix() = default;
    explicit UnitaryMatrix(std::size_t n) : dim(n), entries(n * n) {
    }

    static UnitaryMatrix identity(std::size_t n);

    cdouble &at(std::size_t row, std::size_t col) {
        return entries[row * dim + col];
    }
    const cdouble &at(std::size_t row, std::size_t col) const {
        return entries[row * dim + col];
    }
};

/// omega^power with omega = e^{+2*pi*i/d}.
cdouble omega(int d, long long power = 1);

/// Increment gate X_d: |k> -> |k+1 mod d>. Ones on the subdiagonal and the
/// top-right corner.
UnitaryMatrix build_x(int d);

/// Phase gate Z_d = diag(1, omega, omega^2, ...).
UnitaryMatrix build_z(int d);

/// Fourier gate F_d with entry (j, k) = omega^{jk} / sqrt(d).
UnitaryMatrix build_f(int d);

/// Two-qudit controlled increment on a pair of `phys`-level wires: basis map
/// |c,t> -> |c,(t+delta) mod m> when c == control_value and t < m, identity
/// otherwise.
UnitaryMatrix build_cinc(int phys, int control_value, int modulus, int delta);

/// n-qudit Toffoli on d-level wires: increments the target mod d iff all n-1
/// controls hold d-1. Block diagonal, identity except the last d-block.
UnitaryMatrix build_multi_toffoli(int n, int d);

/// Grover diffusion operator: 2/d^n everywhere, 2/d^n - 1 on the diagonal.
UnitaryMatrix build_diffusion(int n, int d);

UnitaryMatrix multiply(const UnitaryMatrix &a, const UnitaryMatrix &b);
UnitaryMatrix dagger(const UnitaryMatrix &m);
UnitaryMatrix kron(const UnitaryMatrix &a, const UnitaryMatrix &b);

/// max |(U U†)_{jk} - delta_{jk}|.
double unitarity_defect(const UnitaryMatrix &m);
bool is_unitary(const UnitaryMatrix &m, double tol = 1e-10);

/// Both matrices normalized by the phase of their first entry with modulus
/// above `nonzero_tol`, then compared elementwise.
bool equal_up_to_global_phase(const UnitaryMatrix &a, const UnitaryMatrix &b, double tol = 1e-9,
                              double nonzero_tol = 1e-12);

double max_abs_difference(const UnitaryMatrix &a, const UnitaryMatrix &b);

}  // namespace quditsim::gates

#endif

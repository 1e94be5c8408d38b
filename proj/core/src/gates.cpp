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

#include "quditsim/gates.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "quditsim/error.hpp"

namespace quditsim::gates {

namespace {

constexpr std::size_t kDenseDimLimit = 4096;  // full-operator guard

void require_dim(int d) {
    if (d < 2) {
        throw std::invalid_argument("gate dimension must be >= 2, got " + std::to_string(d));
    }
}

std::size_t checked_power(int d, int n) {
    std::size_t total = 1;
    for (int i = 0; i < n; ++i) {
        total *= static_cast<std::size_t>(d);
        if (total > kDenseDimLimit) {
            throw ResourceError("dense operator dimension " + std::to_string(d) + "^" + std::to_string(n) +
                                " exceeds guard of " + std::to_string(kDenseDimLimit));
        }
    }
    return total;
}

}  // namespace

UnitaryMatrix UnitaryMatrix::identity(std::size_t n) {
    UnitaryMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) {
        m.at(i, i) = 1.0;
    }
    return m;
}

cdouble omega(int d, long long power) {
    const double angle = 2.0 * std::numbers::pi * static_cast<double>(power) / static_cast<double>(d);
    return std::polar(1.0, angle);
}

UnitaryMatrix build_x(int d) {
    require_dim(d);
    UnitaryMatrix m(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) {
        m.at(static_cast<std::size_t>((k + 1) % d), static_cast<std::size_t>(k)) = 1.0;
    }
    return m;
}

UnitaryMatrix build_z(int d) {
    require_dim(d);
    UnitaryMatrix m(static_cast<std::size_t>(d));
    for (int k = 0; k < d; ++k) {
        m.at(static_cast<std::size_t>(k), static_cast<std::size_t>(k)) = omega(d, k);
    }
    return m;
}

UnitaryMatrix build_f(int d) {
    require_dim(d);
    UnitaryMatrix m(static_cast<std::size_t>(d));
    const double scale = 1.0 / std::sqrt(static_cast<double>(d));
    for (int j = 0; j < d; ++j) {
        for (int k = 0; k < d; ++k) {
            m.at(static_cast<std::size_t>(j), static_cast<std::size_t>(k)) =
                omega(d, static_cast<long long>(j) * k) * scale;
        }
    }
    return m;
}

UnitaryMatrix build_cinc(int phys, int control_value, int modulus, int delta) {
    require_dim(phys);
    if (control_value < 0 || control_value >= phys) {
        throw std::invalid_argument("control_value out of range");
    }
    if (modulus < 2 || modulus > phys) {
        throw std::invalid_argument("modulus out of range");
    }
    if (delta != 1 && delta != -1) {
        throw std::invalid_argument("delta must be +1 or -1");
    }
    const std::size_t p = static_cast<std::size_t>(phys);
    UnitaryMatrix m(p * p);
    for (int c = 0; c < phys; ++c) {
        for (int t = 0; t < phys; ++t) {
            int t_out = t;
            if (c == control_value && t < modulus) {
                t_out = (t + modulus + delta) % modulus;
            }
            m.at(static_cast<std::size_t>(c) * p + static_cast<std::size_t>(t_out),
                 static_cast<std::size_t>(c) * p + static_cast<std::size_t>(t)) = 1.0;
        }
    }
    return m;
}

UnitaryMatrix build_multi_toffoli(int n, int d) {
    require_dim(d);
    if (n < 2 || n > 12) {
        throw ResourceError("multi-controlled increment supports 2 <= n <= 12, got n=" + std::to_string(n));
    }
    const std::size_t total = checked_power(d, n);
    UnitaryMatrix m = UnitaryMatrix::identity(total);
    // Only the final d-block differs from the identity: it is X_d.
    const std::size_t base = total - static_cast<std::size_t>(d);
    for (int t = 0; t < d; ++t) {
        m.at(base + static_cast<std::size_t>(t), base + static_cast<std::size_t>(t)) = 0.0;
        m.at(base + static_cast<std::size_t>((t + 1) % d), base + static_cast<std::size_t>(t)) = 1.0;
    }
    return m;
}

UnitaryMatrix build_diffusion(int n, int d) {
    require_dim(d);
    if (n < 1) {
        throw std::invalid_argument("diffusion needs n >= 1");
    }
    const std::size_t total = checked_power(d, n);
    UnitaryMatrix m(total);
    const double off = 2.0 / static_cast<double>(total);
    for (std::size_t r = 0; r < total; ++r) {
        for (std::size_t c = 0; c < total; ++c) {
            m.at(r, c) = (r == c) ? off - 1.0 : off;
        }
    }
    return m;
}

UnitaryMatrix multiply(const UnitaryMatrix &a, const UnitaryMatrix &b) {
    if (a.dim != b.dim) {
        throw std::invalid_argument("matrix dimension mismatch");
    }
    UnitaryMatrix out(a.dim);
    for (std::size_t r = 0; r < a.dim; ++r) {
        for (std::size_t k = 0; k < a.dim; ++k) {
            const cdouble ark = a.at(r, k);
            if (ark == cdouble{}) {
                continue;
            }
            for (std::size_t c = 0; c < a.dim; ++c) {
                out.at(r, c) += ark * b.at(k, c);
            }
        }
    }
    return out;
}

UnitaryMatrix dagger(const UnitaryMatrix &m) {
    UnitaryMatrix out(m.dim);
    for (std::size_t r = 0; r < m.dim; ++r) {
        for (std::size_t c = 0; c < m.dim; ++c) {
            out.at(c, r) = std::conj(m.at(r, c));
        }
    }
    return out;
}

UnitaryMatrix kron(const UnitaryMatrix &a, const UnitaryMatrix &b) {
    UnitaryMatrix out(a.dim * b.dim);
    for (std::size_t ar = 0; ar < a.dim; ++ar) {
        for (std::size_t ac = 0; ac < a.dim; ++ac) {
            const cdouble scale = a.at(ar, ac);
            if (scale == cdouble{}) {
                continue;
            }
            for (std::size_t br = 0; br < b.dim; ++br) {
                for (std::size_t bc = 0; bc < b.dim; ++bc) {
                    out.at(ar * b.dim + br, ac * b.dim + bc) = scale * b.at(br, bc);
                }
            }
        }
    }
    return out;
}

double unitarity_defect(const UnitaryMatrix &m) {
    UnitaryMatrix product = multiply(m, dagger(m));
    double worst = 0.0;
    for (std::size_t r = 0; r < m.dim; ++r) {
        for (std::size_t c = 0; c < m.dim; ++c) {
            cdouble want = (r == c) ? cdouble{1.0, 0.0} : cdouble{};
            worst = std::max(worst, std::abs(product.at(r, c) - want));
        }
    }
    return worst;
}

bool is_unitary(const UnitaryMatrix &m, double tol) {
    return unitarity_defect(m) <= tol;
}

namespace {

cdouble leading_phase(const UnitaryMatrix &m, double nonzero_tol) {
    for (const cdouble &e : m.entries) {
        if (std::abs(e) > nonzero_tol) {
            return e / std::abs(e);
        }
    }
    return {1.0, 0.0};
}

}  // namespace

bool equal_up_to_global_phase(const UnitaryMatrix &a, const UnitaryMatrix &b, double tol, double nonzero_tol) {
    if (a.dim != b.dim) {
        return false;
    }
    const cdouble pa = leading_phase(a, nonzero_tol);
    const cdouble pb = leading_phase(b, nonzero_tol);
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        if (std::abs(a.entries[i] / pa - b.entries[i] / pb) > tol) {
            return false;
        }
    }
    return true;
}

double max_abs_difference(const UnitaryMatrix &a, const UnitaryMatrix &b) {
    if (a.dim != b.dim) {
        throw std::invalid_argument("matrix dimension mismatch");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        worst = std::max(worst, std::abs(a.entries[i] - b.entries[i]));
    }
    return worst;
}

}  // namespace quditsim::gates

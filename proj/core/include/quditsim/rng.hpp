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

#ifndef QUDITSIM_RNG_HPP
#define QUDITSIM_RNG_HPP

#include <cstdint>
#include <random>

namespace quditsim {

using Rng = std::mt19937_64;

/// splitmix64 finalizer; decorrelates nearby seeds before they feed mt19937.
inline std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline Rng make_rng(std::uint64_t seed) {
    return Rng(mix_seed(seed));
}

/// Independent stream for one Monte Carlo trajectory. Deterministic in
/// (seed, index) so trial results never depend on evaluation order.
inline Rng make_stream_rng(std::uint64_t seed, std::uint64_t index) {
    return Rng(mix_seed(mix_seed(seed) ^ mix_seed(index + 1)));
}

/// Uniform double in [0, 1) from the top 53 bits.
inline double next_unit(Rng &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace quditsim

#endif

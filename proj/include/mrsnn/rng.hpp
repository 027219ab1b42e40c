/*
 * Copyright 2026 the mrsnn authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstdint>
#include <random>

namespace mrsnn {

/// splitmix64 step; used to derive independent child seeds from a master
/// seed. Derivation is pure, so parallel consumers can each build their own
/// engine from (master, index...) without sharing any RNG state.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a) {
    return splitmix64(master ^ splitmix64(a + 0x51ed2701ULL));
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b) {
    return derive_seed(derive_seed(master, a), b);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                                 std::uint64_t b, std::uint64_t c) {
    return derive_seed(derive_seed(master, a, b), c);
}

/// The one engine type used across the library; fixed so seeded runs are
/// reproducible for a given build.
using Rng = std::mt19937_64;

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

/// Laplace(0, scale) via inverse CDF on a single uniform draw.
inline double sample_laplace(Rng& rng, double scale = 1.0) {
    std::uniform_real_distribution<double> uni(-0.5, 0.5);
    const double r = uni(rng);
    const double mag = -scale * std::log(1.0 - 2.0 * std::abs(r));
    return r < 0.0 ? -mag : mag;
}

}  // namespace mrsnn

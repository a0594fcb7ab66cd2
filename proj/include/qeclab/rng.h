// Copyright 2026 The qeclab Authors
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

#ifndef QECLAB_RNG_H
#define QECLAB_RNG_H

#include <cmath>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace qeclab {

using Rng = std::mt19937_64;

// The standard distributions are implementation defined, so results would
// differ between standard libraries. These helpers only rely on the engine.

/// Uniform integer in [0, n). n must be positive.
inline uint64_t uniform_index(Rng &rng, uint64_t n) {
    // Rejection on the top of the range keeps it exactly uniform.
    uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    while (true) {
        uint64_t r = rng();
        if (r < limit) {
            return r % n;
        }
    }
}

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform_double(Rng &rng) {
    return (double)(rng() >> 11) * 0x1.0p-53;
}

inline bool coin_flip(Rng &rng) {
    return (rng() >> 63) != 0;
}

/// Standard normal via Box-Muller (portable across standard libraries).
inline double standard_normal(Rng &rng) {
    double u1 = 1.0 - uniform_double(rng);
    double u2 = uniform_double(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
}

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

inline uint64_t hash_string(std::string_view s) {
    uint64_t h = 0xCBF29CE484222325ULL;
    for (char c : s) {
        h ^= (uint8_t)c;
        h *= 0x100000001B3ULL;
    }
    return splitmix64(h);
}

/// Child seed keyed on the master seed and a list of coordinates.
inline uint64_t derive_seed(uint64_t master, std::initializer_list<uint64_t> coords) {
    uint64_t h = splitmix64(master);
    for (uint64_t c : coords) {
        h = splitmix64(h ^ splitmix64(c + 0x632BE59BD9B4E019ULL));
    }
    return h;
}

}  // namespace qeclab

#endif

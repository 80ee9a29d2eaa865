// Copyright 2026 The sqkernel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file rng.hpp
 * @brief Explicitly seeded random number generation with a fixed, portable
 *        output stream: splitmix64 seeding and the xoshiro256++ generator.
 *
 * Every randomized routine in the library derives its stream from a caller
 * supplied 64-bit seed through these functions, so identical seeds reproduce
 * identical results on any platform.
 */

#pragma once

#include <cstdint>

namespace sqk {

/// splitmix64 finalizer: bijective 64-bit mix.
constexpr std::uint64_t splitmix64_mix(std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Derived stream seed for substream `index` of `master`: the splitmix64
/// finalizer applied at the golden-gamma offset (index + 1).
constexpr std::uint64_t hash64(std::uint64_t master, std::uint64_t index) {
    return splitmix64_mix(master + 0x9E3779B97F4A7C15ULL * (index + 1));
}

/**
 * @brief xoshiro256++ generator, state seeded from one 64-bit value via
 *        four successive splitmix64 outputs.
 */
class Xoshiro256pp {
  public:
    explicit Xoshiro256pp(std::uint64_t seed) {
        std::uint64_t sm = seed;
        for (auto &word : state_) {
            word = splitmix64_mix(sm);
            sm += 0x9E3779B97F4A7C15ULL;
        }
    }

    /// Next 64 uniform bits.
    std::uint64_t next() {
        const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
        const std::uint64_t t = state_[1] << 17;
        state_[2] ^= state_[0];
        state_[3] ^= state_[1];
        state_[1] ^= state_[2];
        state_[0] ^= state_[3];
        state_[2] ^= t;
        state_[3] = rotl(state_[3], 45);
        return result;
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform double in [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * next_double(); }

  private:
    static constexpr std::uint64_t rotl(std::uint64_t v, int k) {
        return (v << k) | (v >> (64 - k));
    }

    std::uint64_t state_[4] = {};
};

} // namespace sqk

// SPDX-License-Identifier: Apache-2.0
//
// irslab - capacity and allocation toolkit for IRS-aided multi-antenna broadcast channels
// Copyright (C) 2026 The irslab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef IRSLAB_RANDOM_HPP
#define IRSLAB_RANDOM_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

#include "irslab/units.hpp"

namespace irslab {

/// SplitMix64 output finalizer. A bijection on 64-bit words.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/*!
 * Per-trial seed derivation.
 *
 *     seed(master, i) = mix64(master XOR mix64(i + 0x9E3779B97F4A7C15))
 *
 * For a fixed index the map is a bijection in `master`, and for a fixed
 * master it is a bijection in `i`, so distinct trials of one run never share a
 * seed. The value depends only on its arguments, which makes parallel trial
 * schedules reproduce the sequential one exactly.
 */
constexpr std::uint64_t derive_trial_seed(std::uint64_t master_seed, std::uint64_t trial_index) noexcept {
    return mix64(master_seed ^ mix64(trial_index + 0x9E3779B97F4A7C15ULL));
}

/*!
 * Portable random source.
 *
 * The engine is std::mt19937_64, whose output sequence is fixed by the C++
 * standard. The standard distributions are implementation-defined, so the
 * transforms below are done by hand:
 *  - uniform(): top 53 bits of one engine word, scaled to [0, 1).
 *  - complex_gaussian(): Box-Muller on two uniforms u1, u2 giving
 *    sqrt(-ln(1-u1)) * exp(j 2 pi u2), i.e. CN(0, 1) with unit total variance.
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double uniform_phase() { return 2.0 * pi * uniform(); }

    std::complex<double> complex_gaussian() {
        const double u1 = uniform();
        const double u2 = uniform();
        const double radius = std::sqrt(-std::log1p(-u1));
        const double angle = 2.0 * pi * u2;
        return {radius * std::cos(angle), radius * std::sin(angle)};
    }

    std::uint64_t next_word() { return engine_(); }

private:
    std::mt19937_64 engine_;
};

} // namespace irslab

#endif

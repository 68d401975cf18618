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

#ifndef IRSLAB_BEAMFORM_HPP
#define IRSLAB_BEAMFORM_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "irslab/array_response.hpp"
#include "irslab/channel.hpp"
#include "irslab/config.hpp"
#include "irslab/errors.hpp"

namespace irslab {

/// q(b) = ((2^b / pi) sin(pi / 2^b))^2, and 1 for continuous phases.
inline double quantization_gain(int bits) {
    if (bits < 1)
        throw ValidationError("quantization_gain: bits must be >= 1, got " + std::to_string(bits));
    const double levels = std::ldexp(1.0, bits);
    const double f = levels / pi * std::sin(pi / levels);
    return f * f;
}

inline double quantization_gain(QuantBits bits) {
    return bits.is_continuous() ? 1.0 : quantization_gain(bits.bits());
}

/// Counts entries whose phase was undefined (zero magnitude) and therefore taken as 0.
struct PhaseDiagnostics {
    int zero_magnitude_entries = 0;
};

namespace detail {

inline double phase_or_zero(cplx v, int& zero_count) {
    if (v == cplx{0.0, 0.0}) {
        ++zero_count;
        return 0.0;
    }
    return std::arg(v);
}

/// Nearest grid index to `target` in circular distance; exact ties go to the lower index.
inline int nearest_grid_index(double target, int levels) {
    const double step = 2.0 * pi / levels;
    double t = std::fmod(target, 2.0 * pi);
    if (t < 0.0)
        t += 2.0 * pi;
    const double pos = t / step;
    const double lo = std::floor(pos);
    const double frac = pos - lo;
    const int lo_idx = static_cast<int>(lo) % levels;
    const int hi_idx = (lo_idx + 1) % levels;
    if (frac < 0.5)
        return lo_idx;
    if (frac > 0.5)
        return hi_idx;
    return std::min(lo_idx, hi_idx);
}

inline void require_same_length(const ComplexVector& a, const ComplexVector& b, const char* what) {
    if (a.size() != b.size())
        throw ValidationError(std::string(what) + ": length mismatch (" + std::to_string(a.size()) + " vs " +
                              std::to_string(b.size()) + ")");
}

} // namespace detail

/*!
 * Element-wise phase rule: theta_n is the point of the phase grid nearest to
 * arg(h_r[n]) - arg(a_s[n]). Continuous resolution uses the residual itself.
 */
inline PhasePattern optimal_phase_pattern(const ComplexVector& h_r, const ComplexVector& a_s, QuantBits bits,
                                          PhaseDiagnostics* diagnostics = nullptr) {
    detail::require_same_length(h_r, a_s, "optimal_phase_pattern");
    int zero_count = 0;
    std::vector<double> targets(static_cast<std::size_t>(h_r.size()));
    for (Eigen::Index n = 0; n < h_r.size(); ++n)
        targets[static_cast<std::size_t>(n)] =
            detail::phase_or_zero(h_r[n], zero_count) - detail::phase_or_zero(a_s[n], zero_count);
    if (diagnostics)
        diagnostics->zero_magnitude_entries = zero_count;
    if (bits.is_continuous())
        return PhasePattern::continuous(std::move(targets));
    std::vector<int> idx;
    idx.reserve(targets.size());
    for (double t : targets)
        idx.push_back(detail::nearest_grid_index(t, bits.levels()));
    return PhasePattern::from_indices(bits, std::move(idx));
}

/// |h_r^H diag(e^{j theta}) a_s|^2
inline double passive_gain(const ComplexVector& h_r, const PhasePattern& theta, const ComplexVector& a_s) {
    detail::require_same_length(h_r, a_s, "passive_gain");
    if (static_cast<std::size_t>(h_r.size()) != theta.size())
        throw ValidationError("passive_gain: pattern length mismatch");
    cplx s{0.0, 0.0};
    for (Eigen::Index n = 0; n < h_r.size(); ++n)
        s += std::conj(h_r[n]) * theta.reflection(static_cast<std::size_t>(n)) * a_s[n];
    return std::norm(s);
}

struct PhaseSearchResult {
    PhasePattern pattern;
    double gain = 0.0;
};

/*!
 * Exhaustive search of all Q^N grid patterns in lexicographic index order.
 * Only a strictly larger gain replaces the incumbent, so ties keep the
 * lexicographically smallest index vector. Limited to Q^N <= 2^max_log2_space.
 */
inline PhaseSearchResult brute_force_phase_search(const ComplexVector& h_r, const ComplexVector& a_s, QuantBits bits,
                                                  int max_log2_space = 20) {
    detail::require_same_length(h_r, a_s, "brute_force_phase_search");
    detail::require(!bits.is_continuous(), "brute_force_phase_search needs finite quant_bits");
    const auto n = static_cast<std::size_t>(h_r.size());
    if (static_cast<long long>(bits.bits()) * static_cast<long long>(n) > max_log2_space)
        throw GuardExceededError("brute_force_phase_search: Q^N = 2^" + std::to_string(bits.bits() * n) +
                                 " exceeds the 2^" + std::to_string(max_log2_space) + " guard");
    const int levels = bits.levels();
    std::vector<cplx> grid(static_cast<std::size_t>(levels));
    for (int q = 0; q < levels; ++q)
        grid[static_cast<std::size_t>(q)] = std::polar(1.0, 2.0 * pi * q / levels);
    std::vector<cplx> terms(n);
    for (std::size_t i = 0; i < n; ++i)
        terms[i] = std::conj(h_r[static_cast<Eigen::Index>(i)]) * a_s[static_cast<Eigen::Index>(i)];

    std::vector<int> idx(n, 0);
    std::vector<int> best = idx;
    double best_gain = -1.0;
    for (;;) {
        cplx s{0.0, 0.0};
        for (std::size_t i = 0; i < n; ++i)
            s += terms[i] * grid[static_cast<std::size_t>(idx[i])];
        const double g = std::norm(s);
        if (g > best_gain) {
            best_gain = g;
            best = idx;
        }
        bool exhausted = true;
        for (std::size_t pos = n; pos-- > 0;) {
            if (++idx[pos] < levels) {
                exhausted = false;
                break;
            }
            idx[pos] = 0;
        }
        if (exhausted)
            break;
    }
    return {PhasePattern::from_indices(bits, std::move(best)), std::max(best_gain, 0.0)};
}

/// sqrt(power) a_M(x) / sqrt(m).
inline ComplexVector mrt_beamformer(double sin_aod, int m, double power, double d_over_lambda = 0.5) {
    detail::require(power >= 0.0 && std::isfinite(power), "mrt_beamformer: power must be finite and >= 0");
    return std::sqrt(power / m) * ula_response(m, sin_aod, d_over_lambda);
}

/// BS beams and one phase pattern per surface.
struct BeamformerSet {
    std::vector<ComplexVector> beams;
    std::vector<PhasePattern> patterns;

    double total_power() const {
        double s = 0.0;
        for (const auto& w : beams)
            s += w.squaredNorm();
        return s;
    }
};

} // namespace irslab

#endif

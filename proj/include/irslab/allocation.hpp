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

#ifndef IRSLAB_ALLOCATION_HPP
#define IRSLAB_ALLOCATION_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "irslab/beamform.hpp"
#include "irslab/config.hpp"
#include "irslab/errors.hpp"

namespace irslab {

enum class Objective { SumRate, MinRate };
enum class PowerRule { WaterFilling, Equalizing };

/// Element and power split with the objective it achieves.
struct AllocationResult {
    std::vector<double> shares;   ///< continuous element shares
    std::vector<int> elements;    ///< integer element counts, summing to N
    std::vector<double> powers;   ///< per-cluster powers of the boundary users
    std::vector<double> snr;      ///< received SNR per cluster
    std::vector<double> rates;    ///< log2(1 + snr)
    double objective = 0.0;       ///< min or sum of `rates`
    bool small_n = false;         ///< large-N optimality not expected (N < 10 K)
};

/// Gamma_k = M rho_k^2 q / sigma^2 at the cluster's boundary user.
inline double snr_coefficient(const SystemConfig& cfg, int k) {
    return cfg.m_antennas * concatenated_gain(cfg, k, cfg.boundary_user()) * quantization_gain(cfg.quant_bits) /
           cfg.noise_power;
}

inline std::vector<double> snr_coefficients(const SystemConfig& cfg) {
    std::vector<double> g;
    for (int k = 0; k < cfg.k_clusters; ++k)
        g.push_back(snr_coefficient(cfg, k));
    return g;
}

/*!
 * Largest-remainder rounding of continuous shares to integers summing to
 * n_total. Remainders go to the largest fractional parts, ties to the lower
 * index. A positive share left at 0 takes one unit from the largest count.
 */
inline std::vector<int> round_elements(const std::vector<double>& shares, int n_total) {
    detail::require(!shares.empty(), "round_elements: empty shares");
    detail::require(n_total >= 0, "round_elements: n_total must be >= 0");
    for (double s : shares)
        detail::require(std::isfinite(s) && s >= 0.0, "round_elements: shares must be finite and >= 0");
    const double sum = std::accumulate(shares.begin(), shares.end(), 0.0);
    detail::require(std::abs(sum - n_total) <= 1e-6 * std::max(1.0, static_cast<double>(n_total)),
                    "round_elements: shares must sum to n_total");
    const std::size_t k = shares.size();
    std::vector<int> out(k);
    std::vector<double> frac(k);
    long long assigned = 0;
    for (std::size_t i = 0; i < k; ++i) {
        const double f = std::floor(shares[i]);
        out[i] = static_cast<int>(f);
        frac[i] = shares[i] - f;
        assigned += out[i];
    }
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return frac[a] > frac[b]; });
    long long remaining = n_total - assigned;
    for (std::size_t i = 0; remaining > 0; i = (i + 1) % k, --remaining)
        ++out[order[i]];
    for (std::size_t i = 0; remaining < 0; i = (i + 1) % k) {
        const std::size_t j = order[k - 1 - i];
        if (out[j] > 0) {
            --out[j];
            ++remaining;
        }
    }

    const auto positive = static_cast<int>(std::ranges::count_if(shares, [](double s) { return s > 0.0; }));
    for (std::size_t i = 0; i < k; ++i) {
        if (out[i] != 0 || shares[i] <= 0.0)
            continue;
        if (n_total < positive)
            throw ValidationError("round_elements: n_total = " + std::to_string(n_total) + " cannot give one element to each of " +
                                  std::to_string(positive) + " clusters");
        const auto donor = static_cast<std::size_t>(std::ranges::max_element(out) - out.begin());
        --out[donor];
        ++out[i];
    }
    return out;
}

struct WaterFillingResult {
    std::vector<double> powers;
    double level = 0.0;
};

/*!
 * p_k = max(u - 1/g_k, 0) with sum p_k = p_total. The active set is closed
 * analytically after sorting the gains in descending order.
 */
inline WaterFillingResult water_filling(const std::vector<double>& gains, double p_total) {
    detail::require(!gains.empty(), "water_filling: empty gains");
    detail::require(p_total > 0.0 && std::isfinite(p_total), "water_filling: p_total must be finite and > 0");
    for (double g : gains)
        detail::require(g > 0.0, "water_filling: gains must be > 0");
    const std::size_t k = gains.size();
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return gains[a] > gains[b]; });

    std::size_t active = 1;
    double level = p_total + 1.0 / gains[order[0]];
    double inv_sum = 0.0;
    for (std::size_t a = 1; a <= k; ++a) {
        inv_sum += 1.0 / gains[order[a - 1]];
        const double u = (p_total + inv_sum) / static_cast<double>(a);
        if (u - 1.0 / gains[order[a - 1]] > 0.0) {
            active = a;
            level = u;
        } else {
            break;
        }
    }
    WaterFillingResult r;
    r.level = level;
    r.powers.assign(k, 0.0);
    double spent = 0.0;
    for (std::size_t i = 0; i + 1 < active; ++i) {
        r.powers[order[i]] = level - 1.0 / gains[order[i]];
        spent += r.powers[order[i]];
    }
    r.powers[order[active - 1]] = std::max(p_total - spent, 0.0);
    return r;
}

namespace detail {

inline void finish(AllocationResult& r, Objective objective) {
    r.rates.clear();
    for (double s : r.snr)
        r.rates.push_back(std::log2(1.0 + s));
    if (objective == Objective::SumRate)
        r.objective = std::accumulate(r.rates.begin(), r.rates.end(), 0.0);
    else
        r.objective = *std::ranges::min_element(r.rates);
}

inline void require_positive_gains(const SystemConfig& cfg, const char* who) {
    for (int k = 0; k < cfg.k_clusters; ++k)
        if (!(concatenated_gain(cfg, k, cfg.boundary_user()) > 0.0))
            throw ValidationError(std::string(who) + ": concatenated path loss of cluster " + std::to_string(k) +
                                  " is zero");
}

/// Powers and SNRs for an element split under the chosen power rule; clusters with no elements get nothing.
inline void apply_power_rule(AllocationResult& r, const std::vector<double>& gamma, double p_max, PowerRule rule) {
    const std::size_t k = gamma.size();
    r.powers.assign(k, 0.0);
    r.snr.assign(k, 0.0);
    std::vector<std::size_t> live;
    std::vector<double> gains;
    for (std::size_t i = 0; i < k; ++i) {
        if (r.elements[i] > 0) {
            live.push_back(i);
            gains.push_back(gamma[i] * r.elements[i] * static_cast<double>(r.elements[i]));
        }
    }
    if (live.empty() || p_max <= 0.0)
        return;
    if (rule == PowerRule::WaterFilling) {
        const auto wf = water_filling(gains, p_max);
        for (std::size_t j = 0; j < live.size(); ++j) {
            r.powers[live[j]] = wf.powers[j];
            r.snr[live[j]] = wf.powers[j] * gains[j];
        }
    } else {
        double inv = 0.0;
        for (double g : gains)
            inv += 1.0 / g;
        const double upsilon = p_max / inv;
        for (std::size_t j = 0; j < live.size(); ++j) {
            r.powers[live[j]] = upsilon / gains[j];
            r.snr[live[j]] = upsilon;
        }
    }
}

} // namespace detail

/*!
 * Closed-form max-min split: shares proportional to (2 / rho_k^2)^{1/3},
 * powers proportional to (rho_k^2 share_k^2)^{-1}, which equalizes the SNR.
 * The objective is evaluated at the continuous shares.
 */
inline AllocationResult maxmin_allocation(const SystemConfig& cfg) {
    validate(cfg);
    detail::require_positive_gains(cfg, "maxmin_allocation");
    const auto k = static_cast<std::size_t>(cfg.k_clusters);
    const double n = cfg.n_total_elements;
    std::vector<double> weight(k);
    for (std::size_t i = 0; i < k; ++i)
        weight[i] = std::cbrt(2.0 / concatenated_gain(cfg, static_cast<int>(i), cfg.boundary_user()));
    const double wsum = std::accumulate(weight.begin(), weight.end(), 0.0);

    AllocationResult r;
    r.shares.resize(k);
    for (std::size_t i = 0; i < k; ++i)
        r.shares[i] = n * weight[i] / wsum;
    std::vector<double> inv(k);
    for (std::size_t i = 0; i < k; ++i) {
        const double rho2 = concatenated_gain(cfg, static_cast<int>(i), cfg.boundary_user());
        inv[i] = 1.0 / (rho2 * r.shares[i] * r.shares[i]);
    }
    const double inv_sum = std::accumulate(inv.begin(), inv.end(), 0.0);
    for (std::size_t i = 0; i < k; ++i) {
        r.powers.push_back(cfg.p_max * inv[i] / inv_sum);
        r.snr.push_back(r.powers[i] * snr_coefficient(cfg, static_cast<int>(i)) * r.shares[i] * r.shares[i]);
    }
    r.elements = round_elements(r.shares, cfg.n_total_elements);
    detail::finish(r, Objective::MinRate);
    return r;
}

/// Relative spread of 2 / (Gamma_k share_k^3), which vanishes at a stationary point with a common multiplier.
inline double maxmin_kkt_residual(const SystemConfig& cfg, const std::vector<double>& shares) {
    std::vector<double> mu;
    for (std::size_t i = 0; i < shares.size(); ++i)
        mu.push_back(2.0 / (snr_coefficient(cfg, static_cast<int>(i)) * std::pow(shares[i], 3)));
    const auto [lo, hi] = std::ranges::minmax(mu);
    return (hi - lo) / hi;
}

/// Integer split with SNR-equalizing power; the min-rate objective at that split.
inline AllocationResult minrate_for_split(const SystemConfig& cfg, const std::vector<int>& elements) {
    AllocationResult r;
    r.elements = elements;
    r.shares.assign(elements.begin(), elements.end());
    detail::apply_power_rule(r, snr_coefficients(cfg), cfg.p_max, PowerRule::Equalizing);
    detail::finish(r, Objective::MinRate);
    return r;
}

/// Equal element split and equal power P/K.
inline AllocationResult sumrate_equal_allocation(const SystemConfig& cfg) {
    validate(cfg);
    const auto k = static_cast<std::size_t>(cfg.k_clusters);
    AllocationResult r;
    r.shares.assign(k, static_cast<double>(cfg.n_total_elements) / cfg.k_clusters);
    r.elements = round_elements(r.shares, cfg.n_total_elements);
    r.small_n = cfg.n_total_elements < 10 * cfg.k_clusters;
    for (std::size_t i = 0; i < k; ++i) {
        const double p = cfg.p_max / cfg.k_clusters;
        const double nk = r.elements[i];
        r.powers.push_back(p);
        r.snr.push_back(p * snr_coefficient(cfg, static_cast<int>(i)) * nk * nk);
    }
    detail::finish(r, Objective::SumRate);
    return r;
}

/// Equal element split with the rule's power allocation (min-rate baseline).
inline AllocationResult equal_split_allocation(const SystemConfig& cfg, Objective objective, PowerRule rule) {
    validate(cfg);
    AllocationResult r;
    r.shares.assign(static_cast<std::size_t>(cfg.k_clusters),
                    static_cast<double>(cfg.n_total_elements) / cfg.k_clusters);
    r.elements = round_elements(r.shares, cfg.n_total_elements);
    detail::apply_power_rule(r, snr_coefficients(cfg), cfg.p_max, rule);
    detail::finish(r, objective);
    return r;
}

inline constexpr long long exhaustive_guard = 1'000'000;

/*!
 * Scans integer splits (N_1 = 0..N for K = 2; N_1, N_2 on a `step` grid for
 * K = 3) and applies the power rule to each. The first split reaching the
 * best objective wins, so ties go to the smallest N_1 (then N_2).
 */
inline AllocationResult exhaustive_element_search(const SystemConfig& cfg, Objective objective, PowerRule rule,
                                                  int step = 1) {
    validate(cfg);
    detail::require(step >= 1, "exhaustive_element_search: step must be >= 1");
    detail::require(cfg.k_clusters <= 3, "exhaustive_element_search supports K <= 3");
    const int n = cfg.n_total_elements;
    const int k = cfg.k_clusters;
    const auto gamma = snr_coefficients(cfg);
    const long long per_axis = n / step + 1;
    const long long combos = k == 1 ? 1 : (k == 2 ? per_axis : per_axis * (per_axis + 1) / 2);
    if (combos > exhaustive_guard)
        throw GuardExceededError("exhaustive_element_search: " + std::to_string(combos) +
                                 " splits exceed the guard of " + std::to_string(exhaustive_guard));

    AllocationResult best;
    bool have = false;
    auto consider = [&](std::vector<int> split) {
        AllocationResult r;
        r.elements = std::move(split);
        r.shares.assign(r.elements.begin(), r.elements.end());
        detail::apply_power_rule(r, gamma, cfg.p_max, rule);
        detail::finish(r, objective);
        if (!have || r.objective > best.objective) {
            best = std::move(r);
            have = true;
        }
    };
    if (k == 1) {
        consider({n});
    } else if (k == 2) {
        for (int n1 = 0; n1 <= n; n1 += step)
            consider({n1, n - n1});
    } else {
        for (int n1 = 0; n1 <= n; n1 += step)
            for (int n2 = 0; n1 + n2 <= n; n2 += step)
                consider({n1, n2, n - n1 - n2});
    }
    return best;
}

} // namespace irslab

#endif

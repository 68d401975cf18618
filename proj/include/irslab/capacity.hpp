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

#ifndef IRSLAB_CAPACITY_HPP
#define IRSLAB_CAPACITY_HPP

#include <cmath>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "irslab/beamform.hpp"
#include "irslab/config.hpp"
#include "irslab/errors.hpp"

namespace irslab {

/// Per-user rates in bits/s/Hz with the resources that produced them.
struct RateReport {
    Architecture architecture = Architecture::Distributed;
    std::vector<double> user_rates;
    double sum_rate = 0.0;
    std::vector<double> powers;      ///< per-user transmit powers (SDMA)
    std::vector<double> time_shares; ///< per-user time fractions (TDMA)
    std::optional<double> snr_coefficient;
    bool asymptotic = false; ///< formula exact only as N grows without bound
};

/// Search-space guard for capacity-region enumeration.
inline constexpr std::size_t region_point_guard = 1'000'000;

namespace detail {

inline void require_rank(const SystemConfig& cfg) {
    if (cfg.k_clusters > cfg.m_antennas)
        throw ValidationError("K = " + std::to_string(cfg.k_clusters) + " exceeds M = " +
                              std::to_string(cfg.m_antennas) + "; the interference-free rate formulas need K <= M");
}

inline double common_concatenated_gain(const SystemConfig& cfg, const char* who) {
    validate(cfg);
    if (!validate_homogeneous(cfg))
        throw ValidationError(std::string(who) +
                              " needs homogeneous channels; use the scheduler Monte-Carlo path for general configs");
    return concatenated_gain(cfg, 0, cfg.boundary_user());
}

inline double log2_1p(double x) { return std::log1p(x) / std::log(2.0); }

} // namespace detail

/// gamma0 = P M rho^2 q / sigma^2 for a homogeneous scenario.
inline double snr_coefficient_homogeneous(const SystemConfig& cfg) {
    const double rho2 = detail::common_concatenated_gain(cfg, "snr_coefficient_homogeneous");
    return cfg.p_max * cfg.m_antennas * rho2 * quantization_gain(cfg.quant_bits) / cfg.noise_power;
}

/// K log2(1 + gamma0 N^2 / K^3) evaluated for real-valued N.
inline double distributed_sum_rate_value(double gamma0, double n, int k) {
    const double kk = k;
    return kk * detail::log2_1p(gamma0 * n * n / (kk * kk * kk));
}

/// log2(1 + gamma0 N^2) evaluated for real-valued N.
inline double centralized_sum_rate_value(double gamma0, double n) { return detail::log2_1p(gamma0 * n * n); }

/// log2(1 + p_k M N^2 rho_k^2 q / (K^2 sigma^2)) with rho_k taken at the cluster's boundary user.
inline double distributed_user_rate(const SystemConfig& cfg, double p_k, int k) {
    validate(cfg);
    detail::require_rank(cfg);
    detail::require(k >= 0 && k < cfg.k_clusters, "distributed_user_rate: cluster index out of range");
    detail::require(p_k >= 0.0, "distributed_user_rate: power must be >= 0");
    const double n = cfg.n_total_elements;
    const double kk = cfg.k_clusters;
    const double rho2 = concatenated_gain(cfg, k, cfg.boundary_user());
    return detail::log2_1p(p_k * cfg.m_antennas * n * n * rho2 * quantization_gain(cfg.quant_bits) /
                           (kk * kk * cfg.noise_power));
}

/// Equal-power SDMA over K interference-free clusters.
inline RateReport distributed_sum_rate(const SystemConfig& cfg) {
    const double gamma0 = snr_coefficient_homogeneous(cfg);
    detail::require_rank(cfg);
    RateReport r;
    r.architecture = Architecture::Distributed;
    r.snr_coefficient = gamma0;
    const double p = cfg.p_max / cfg.k_clusters;
    for (int k = 0; k < cfg.k_clusters; ++k) {
        r.powers.push_back(p);
        r.user_rates.push_back(distributed_user_rate(cfg, p, k));
        r.sum_rate += r.user_rates.back();
    }
    return r;
}

/// Single-stream TDMA through the central surface with equal time shares 1/K.
inline RateReport centralized_sum_rate(const SystemConfig& cfg) {
    detail::common_concatenated_gain(cfg, "centralized_sum_rate");
    const double rho2 = centralized_concatenated_gain(cfg, 0, cfg.boundary_user());
    const double gamma0 = cfg.p_max * cfg.m_antennas * rho2 * quantization_gain(cfg.quant_bits) / cfg.noise_power;
    RateReport r;
    r.architecture = Architecture::Centralized;
    r.snr_coefficient = gamma0;
    r.asymptotic = true;
    const double full = centralized_sum_rate_value(gamma0, cfg.n_total_elements);
    const double share = 1.0 / cfg.k_clusters;
    for (int k = 0; k < cfg.k_clusters; ++k) {
        r.time_shares.push_back(share);
        r.powers.push_back(cfg.p_max);
        r.user_rates.push_back(share * full);
    }
    r.sum_rate = full;
    return r;
}

/// TDMA over the distributed surfaces: each user alone, full power, N/K elements, time share 1/K.
inline RateReport distributed_tdma_sum_rate(const SystemConfig& cfg) {
    validate(cfg);
    RateReport r;
    r.architecture = Architecture::Distributed;
    const double n_k = static_cast<double>(cfg.n_total_elements) / cfg.k_clusters;
    const double q = quantization_gain(cfg.quant_bits);
    const double share = 1.0 / cfg.k_clusters;
    for (int k = 0; k < cfg.k_clusters; ++k) {
        const double rho2 = concatenated_gain(cfg, k, cfg.boundary_user());
        r.time_shares.push_back(share);
        r.powers.push_back(cfg.p_max);
        r.user_rates.push_back(share * detail::log2_1p(cfg.p_max * cfg.m_antennas * n_k * n_k * rho2 * q /
                                                       cfg.noise_power));
        r.sum_rate += r.user_rates.back();
    }
    return r;
}

/// One boundary point of a capacity region: the resource split and the rate tuple.
struct RegionPoint {
    std::vector<double> shares; ///< powers (distributed) or time fractions (centralized)
    std::vector<double> rates;
};

namespace detail {

/// All compositions of `total` into `parts` non-negative parts, first part descending.
inline void simplex_compositions(int total, int parts, std::vector<std::vector<int>>& out) {
    std::vector<int> cur(static_cast<std::size_t>(parts), 0);
    auto rec = [&](auto&& self, int idx, int remaining) -> void {
        if (idx == parts - 1) {
            cur[static_cast<std::size_t>(idx)] = remaining;
            out.push_back(cur);
            return;
        }
        for (int v = remaining; v >= 0; --v) {
            cur[static_cast<std::size_t>(idx)] = v;
            self(self, idx + 1, remaining - v);
        }
    };
    rec(rec, 0, total);
}

inline std::vector<std::vector<int>> region_grid(int grid_points, int k) {
    detail::require(grid_points >= 2, "capacity region: grid_points must be >= 2");
    double count = 1.0;
    for (int i = 1; i < k; ++i)
        count = count * (grid_points - 1 + i) / i;
    if (count > static_cast<double>(region_point_guard))
        throw GuardExceededError("capacity region: " + std::to_string(static_cast<long long>(count)) +
                                 " grid points exceed the guard");
    std::vector<std::vector<int>> out;
    simplex_compositions(grid_points - 1, k, out);
    return out;
}

} // namespace detail

/// Sweeps power splits on a simplex grid; rate k follows its own power only.
inline std::vector<RegionPoint> capacity_region_distributed(const SystemConfig& cfg, int grid_points) {
    validate(cfg);
    detail::require_rank(cfg);
    const auto grid = detail::region_grid(grid_points, cfg.k_clusters);
    std::vector<RegionPoint> out;
    out.reserve(grid.size());
    for (const auto& comp : grid) {
        RegionPoint pt;
        for (int k = 0; k < cfg.k_clusters; ++k) {
            const double p = cfg.p_max * comp[static_cast<std::size_t>(k)] / (grid_points - 1);
            pt.shares.push_back(p);
            pt.rates.push_back(distributed_user_rate(cfg, p, k));
        }
        out.push_back(std::move(pt));
    }
    return out;
}

/// Sweeps time shares on a simplex grid; rate k = share_k log2(1 + P M N^2 rho_k^2 q / sigma^2).
inline std::vector<RegionPoint> capacity_region_centralized(const SystemConfig& cfg, int grid_points) {
    validate(cfg);
    const auto grid = detail::region_grid(grid_points, cfg.k_clusters);
    const double n = cfg.n_total_elements;
    const double q = quantization_gain(cfg.quant_bits);
    std::vector<RegionPoint> out;
    out.reserve(grid.size());
    for (const auto& comp : grid) {
        RegionPoint pt;
        for (int k = 0; k < cfg.k_clusters; ++k) {
            const double share = static_cast<double>(comp[static_cast<std::size_t>(k)]) / (grid_points - 1);
            const double rho2 = centralized_concatenated_gain(cfg, k, cfg.boundary_user());
            pt.shares.push_back(share);
            pt.rates.push_back(share *
                               detail::log2_1p(cfg.p_max * cfg.m_antennas * n * n * rho2 * q / cfg.noise_power));
        }
        out.push_back(std::move(pt));
    }
    return out;
}

/// Spatial degrees of freedom.
inline int dof(Architecture arch, int k) {
    detail::require(k >= 1, "dof: k must be >= 1");
    return arch == Architecture::Distributed ? k : 1;
}

/// g(x) = ln(1 + x) - 3 + 3 / (1 + x)
inline double threshold_g(double x) { return std::log1p(x) - 3.0 + 3.0 / (1.0 + x); }

/// Root of g on [2, 1e6] by bisection until |g| <= tolerance.
inline double solve_c_th(double tolerance = 1e-12) {
    detail::require(tolerance > 0.0, "solve_c_th: tolerance must be > 0");
    double lo = 2.0;
    double hi = 1e6;
    if (!(threshold_g(lo) < 0.0 && threshold_g(hi) > 0.0))
        throw std::logic_error("solve_c_th: bracket [2, 1e6] does not straddle the root");
    double mid = 0.5 * (lo + hi);
    for (int it = 0; it < 2000; ++it) {
        mid = 0.5 * (lo + hi);
        const double g = threshold_g(mid);
        if (std::abs(g) <= tolerance || mid <= lo || mid >= hi)
            return mid;
        (g < 0.0 ? lo : hi) = mid;
    }
    return mid;
}

/// N_th = K^{3K / (2(K - 1))} / sqrt(gamma0); absent for K = 1.
inline std::optional<double> threshold_n_th(double gamma0, int k) {
    if (k < 2)
        return std::nullopt;
    return std::pow(static_cast<double>(k), 3.0 * k / (2.0 * (k - 1))) / std::sqrt(gamma0);
}

/*!
 * Exact N > 0 where K log2(1 + gamma0 N^2 / K^3) = log2(1 + gamma0 N^2).
 * Solved in t = gamma0 N^2 by bisection on log t; absent for K = 1.
 */
inline std::optional<double> crossover_n(double gamma0, int k) {
    detail::require(gamma0 > 0.0, "crossover_n: gamma0 must be > 0");
    if (k < 2)
        return std::nullopt;
    const double kk = k;
    auto f = [kk](double t) { return kk * std::log1p(t / (kk * kk * kk)) - std::log1p(t); };
    double lo = 1e-6;
    double hi = 1.0;
    while (f(hi) <= 0.0)
        hi *= 2.0;
    while (f(lo) >= 0.0)
        lo *= 0.5;
    for (int it = 0; it < 400 && hi / lo > 1.0 + 1e-15; ++it) {
        const double mid = std::sqrt(lo * hi);
        (f(mid) < 0.0 ? lo : hi) = mid;
    }
    return std::sqrt(std::sqrt(lo * hi) / gamma0);
}

struct ThresholdReport {
    double c_th = 0.0;
    double bound27 = 0.0; ///< centralized favored for N at or below this
    double bound29 = 0.0; ///< distributed favored for N at or above this
    std::optional<double> n_th;
    int m_antennas = 0;
    int k_clusters = 0;
    QuantBits quant_bits = QuantBits::continuous();
    double p_max = 0.0;
    double noise_power = 0.0;
    double concatenated_gain = 0.0;
};

inline ThresholdReport threshold_report(const SystemConfig& cfg) {
    const double rho2 = detail::common_concatenated_gain(cfg, "threshold_report");
    const double q = quantization_gain(cfg.quant_bits);
    ThresholdReport r;
    r.c_th = solve_c_th();
    const double base = cfg.noise_power / (cfg.p_max * rho2 * q);
    r.bound27 = std::sqrt(r.c_th * base / cfg.m_antennas);
    r.bound29 = cfg.m_antennas * std::sqrt(r.c_th * base);
    r.n_th = threshold_n_th(cfg.p_max * cfg.m_antennas * rho2 * q / cfg.noise_power, cfg.k_clusters);
    r.m_antennas = cfg.m_antennas;
    r.k_clusters = cfg.k_clusters;
    r.quant_bits = cfg.quant_bits;
    r.p_max = cfg.p_max;
    r.noise_power = cfg.noise_power;
    r.concatenated_gain = rho2;
    return r;
}

struct AsymptoticRates {
    double distributed = 0.0;
    double centralized = 0.0;
    bool high_snr = true; ///< false when P rho^2 / sigma^2 < 1e3
};

/// K (2 log2 N + log2 gamma0 - 3 log2 K) and 2 log2 N + log2 gamma0, for real-valued N.
inline AsymptoticRates asymptotic_sum_rates_value(double gamma0, double n, int k) {
    const double common = 2.0 * std::log2(n) + std::log2(gamma0);
    return {k * (common - 3.0 * std::log2(static_cast<double>(k))), common, true};
}

inline AsymptoticRates asymptotic_sum_rates(const SystemConfig& cfg) {
    const double gamma0 = snr_coefficient_homogeneous(cfg);
    auto r = asymptotic_sum_rates_value(gamma0, cfg.n_total_elements, cfg.k_clusters);
    const double rho2 = concatenated_gain(cfg, 0, cfg.boundary_user());
    r.high_snr = cfg.p_max * rho2 / cfg.noise_power >= 1e3;
    return r;
}

} // namespace irslab

#endif

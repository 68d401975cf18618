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

#ifndef IRSLAB_CONFIG_HPP
#define IRSLAB_CONFIG_HPP

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "irslab/errors.hpp"
#include "irslab/random.hpp"
#include "irslab/units.hpp"

namespace irslab {

enum class Architecture { Distributed, Centralized };

inline const char* to_string(Architecture arch) {
    return arch == Architecture::Distributed ? "distributed" : "centralized";
}

/// Phase resolution of the reflecting elements: b bits (Q = 2^b levels) or continuous.
class QuantBits {
public:
    static QuantBits continuous() { return QuantBits{0}; }

    static QuantBits finite(int bits) {
        if (bits < 1 || bits > 30)
            throw ValidationError("quant_bits must be in [1, 30] or continuous, got " + std::to_string(bits));
        return QuantBits{bits};
    }

    bool is_continuous() const { return bits_ == 0; }
    int bits() const { return bits_; }
    int levels() const { return 1 << bits_; }

    friend bool operator==(const QuantBits&, const QuantBits&) = default;

private:
    explicit QuantBits(int bits) : bits_(bits) {}
    int bits_;
};

/*!
 * Rician K-factor with an explicit pure-LoS state.
 *
 * The LoS state evaluates the mixing weights to exactly 1 and 0, which a large
 * finite factor cannot do.
 */
class RicianFactor {
public:
    static RicianFactor los() { return RicianFactor{std::numeric_limits<double>::infinity()}; }

    static RicianFactor of(double factor) {
        if (!std::isfinite(factor) || factor < 0.0)
            throw ValidationError("Rician factor must be finite and non-negative (use los for the LoS limit)");
        return RicianFactor{factor};
    }

    bool is_los() const { return std::isinf(value_); }
    double value() const { return value_; }

    /// eta = kappa / (kappa + 1)
    double los_power_share() const { return is_los() ? 1.0 : value_ / (value_ + 1.0); }
    double los_amplitude() const { return is_los() ? 1.0 : std::sqrt(value_ / (value_ + 1.0)); }
    double nlos_amplitude() const { return is_los() ? 0.0 : std::sqrt(1.0 / (value_ + 1.0)); }

    friend bool operator==(const RicianFactor&, const RicianFactor&) = default;

private:
    explicit RicianFactor(double v) : value_(v) {}
    double value_;
};

/// Per-cluster BS->IRS quantities plus the single centralized link.
template <typename T>
struct ClusterValues {
    std::vector<T> distributed; ///< one entry per cluster
    T centralized{};
};

/// Per-user IRS->user quantities, cluster-major (index k * L + l), for both layouts.
template <typename T>
struct UserValues {
    std::vector<T> distributed;
    std::vector<T> centralized;
};

/*!
 * Full scenario description. Powers and path losses are linear (watts, power
 * ratios); decibel forms exist only at the scenario-file boundary.
 */
struct SystemConfig {
    int m_antennas = 5;
    int k_clusters = 4;
    int l_users_per_cluster = 1;
    int n_total_elements = 200;
    QuantBits quant_bits = QuantBits::continuous();
    double p_max = 1.0;
    double noise_power = 1e-12;
    std::vector<int> element_split; ///< empty means "equal"
    ClusterValues<double> bs_irs_pathloss;
    UserValues<double> irs_user_pathloss;
    ClusterValues<RicianFactor> rician_bs_irs{{}, RicianFactor::los()};
    UserValues<RicianFactor> rician_irs_user;
    double d_over_lambda = 0.5;
    Architecture architecture = Architecture::Distributed;
    std::uint64_t seed = 1;

    std::size_t user_count() const {
        return static_cast<std::size_t>(k_clusters) * static_cast<std::size_t>(l_users_per_cluster);
    }
    std::size_t user_index(int k, int l) const {
        return static_cast<std::size_t>(k) * static_cast<std::size_t>(l_users_per_cluster) + static_cast<std::size_t>(l);
    }
    /// The cluster's representative (boundary) user u_L^k.
    int boundary_user() const { return l_users_per_cluster - 1; }
};

/// Directional cosine pair (X, Y) of a planar array response.
struct DirectionPair {
    double x = 0.0;
    double y = 0.0;
    friend bool operator==(const DirectionPair&, const DirectionPair&) = default;
};

/// Geometry of every LoS component; all entries are directional cosines in [-1, 1].
struct AngleSet {
    std::vector<double> bs_aod;                      ///< K entries, BS -> IRS k
    std::vector<DirectionPair> irs_aoa;              ///< K entries, arrival at IRS k
    std::vector<DirectionPair> irs_user_aod;         ///< K*L entries, IRS k -> user (k, l)
    double centralized_aod = 0.0;                    ///< BS -> central IRS
    DirectionPair centralized_irs_aoa{};             ///< arrival at the central IRS
    std::vector<DirectionPair> centralized_user_aod; ///< K*L entries, central IRS -> user (k, l)
};

/*!
 * Builds a homogeneous LoS scenario where every concatenated BS-IRS-user gain
 * equals `concatenated_gain`, split evenly between the two hops.
 */
inline SystemConfig make_homogeneous_config(int m, int k, int l, int n, double p_max, double noise_power,
                                            double concatenated_gain) {
    SystemConfig cfg;
    cfg.m_antennas = m;
    cfg.k_clusters = k;
    cfg.l_users_per_cluster = l;
    cfg.n_total_elements = n;
    cfg.p_max = p_max;
    cfg.noise_power = noise_power;
    const double hop = std::sqrt(concatenated_gain);
    const auto users = static_cast<std::size_t>(k) * static_cast<std::size_t>(l);
    cfg.bs_irs_pathloss = {std::vector<double>(static_cast<std::size_t>(k), hop), hop};
    cfg.irs_user_pathloss = {std::vector<double>(users, hop), std::vector<double>(users, hop)};
    cfg.rician_bs_irs = {std::vector<RicianFactor>(static_cast<std::size_t>(k), RicianFactor::los()),
                         RicianFactor::los()};
    cfg.rician_irs_user = {std::vector<RicianFactor>(users, RicianFactor::los()),
                           std::vector<RicianFactor>(users, RicianFactor::los())};
    return cfg;
}

/// Throws ValidationError describing the first violated invariant.
inline void validate(const SystemConfig& cfg) {
    using detail::require;
    require(cfg.m_antennas >= 1, "m_antennas must be >= 1");
    require(cfg.k_clusters >= 1, "k_clusters must be >= 1");
    require(cfg.l_users_per_cluster >= 1, "l_users_per_cluster must be >= 1");
    require(cfg.n_total_elements >= 1, "n_total_elements must be >= 1");
    require(std::isfinite(cfg.p_max) && cfg.p_max >= 0.0, "p_max must be finite and >= 0");
    require(std::isfinite(cfg.noise_power) && cfg.noise_power > 0.0, "noise_power must be finite and > 0");
    require(std::isfinite(cfg.d_over_lambda) && cfg.d_over_lambda > 0.0, "d_over_lambda must be > 0");

    const auto k = static_cast<std::size_t>(cfg.k_clusters);
    const auto users = cfg.user_count();
    if (cfg.element_split.empty()) {
        require(cfg.n_total_elements >= cfg.k_clusters,
                "element_split = equal needs n_total_elements >= k_clusters");
    } else {
        require(cfg.element_split.size() == k, "element_split must list k_clusters entries");
        require(std::ranges::all_of(cfg.element_split, [](int n) { return n >= 1; }),
                "element_split entries must be >= 1");
        const long long total = std::accumulate(cfg.element_split.begin(), cfg.element_split.end(), 0LL);
        require(total == cfg.n_total_elements, "element_split must sum to n_total_elements");
    }

    auto gain_ok = [](double g) { return std::isfinite(g) && g >= 0.0; };
    require(cfg.bs_irs_pathloss.distributed.size() == k, "bs_irs_pathloss must list k_clusters entries");
    require(std::ranges::all_of(cfg.bs_irs_pathloss.distributed, gain_ok) && gain_ok(cfg.bs_irs_pathloss.centralized),
            "bs_irs_pathloss entries must be finite and >= 0");
    require(cfg.irs_user_pathloss.distributed.size() == users && cfg.irs_user_pathloss.centralized.size() == users,
            "irs_user_pathloss must list k_clusters * l_users_per_cluster entries per architecture");
    require(std::ranges::all_of(cfg.irs_user_pathloss.distributed, gain_ok) &&
                std::ranges::all_of(cfg.irs_user_pathloss.centralized, gain_ok),
            "irs_user_pathloss entries must be finite and >= 0");
    require(cfg.rician_bs_irs.distributed.size() == k, "rician_bs_irs must list k_clusters entries");
    require(cfg.rician_irs_user.distributed.size() == users && cfg.rician_irs_user.centralized.size() == users,
            "rician_irs_user must list k_clusters * l_users_per_cluster entries per architecture");
}

/// (rho_g * rho_r)^2 for user (k, l) under the distributed layout.
inline double concatenated_gain(const SystemConfig& cfg, int k, int l) {
    return cfg.bs_irs_pathloss.distributed[static_cast<std::size_t>(k)] *
           cfg.irs_user_pathloss.distributed[cfg.user_index(k, l)];
}

/// (rho_g * rho_r)^2 for user (k, l) under the centralized layout.
inline double centralized_concatenated_gain(const SystemConfig& cfg, int k, int l) {
    return cfg.bs_irs_pathloss.centralized * cfg.irs_user_pathloss.centralized[cfg.user_index(k, l)];
}

/*!
 * Homogeneous-channel check: every concatenated product, over all users of
 * both layouts, agrees with the first one within relative tolerance 1e-12.
 */
inline bool validate_homogeneous(const SystemConfig& cfg) {
    constexpr double rel_tol = 1e-12;
    std::vector<double> products;
    for (int k = 0; k < cfg.k_clusters; ++k) {
        for (int l = 0; l < cfg.l_users_per_cluster; ++l) {
            products.push_back(concatenated_gain(cfg, k, l));
            products.push_back(centralized_concatenated_gain(cfg, k, l));
        }
    }
    const auto [lo, hi] = std::ranges::minmax(products);
    return hi - lo <= rel_tol * std::max(std::abs(lo), std::abs(hi));
}

/// Per-cluster element counts: the explicit split, or N/K with the remainder on the lowest indices.
inline std::vector<int> element_counts(const SystemConfig& cfg) {
    if (!cfg.element_split.empty())
        return cfg.element_split;
    const int base = cfg.n_total_elements / cfg.k_clusters;
    const int extra = cfg.n_total_elements % cfg.k_clusters;
    std::vector<int> counts(static_cast<std::size_t>(cfg.k_clusters), base);
    for (int k = 0; k < extra; ++k)
        ++counts[static_cast<std::size_t>(k)];
    return counts;
}

/// Most-square UPA factorization n = nv * nh with nv the largest divisor <= sqrt(n).
inline std::pair<int, int> upa_factorization(int n) {
    detail::require(n >= 1, "upa_factorization: element count must be >= 1");
    int nv = static_cast<int>(std::floor(std::sqrt(static_cast<double>(n))));
    while (nv * nv > n)
        --nv;
    while (n % nv != 0)
        --nv;
    return {nv, n / nv};
}

/// Order-sensitive 64-bit digest of every field; tags channel realizations.
inline std::uint64_t config_hash(const SystemConfig& cfg) {
    std::uint64_t h = 0x6A09E667F3BCC909ULL;
    auto add = [&h](std::uint64_t word) { h = mix64(h ^ (word + 0x9E3779B97F4A7C15ULL + (h << 6))); };
    auto add_double = [&add](double v) { add(std::bit_cast<std::uint64_t>(v)); };
    add(static_cast<std::uint64_t>(cfg.m_antennas));
    add(static_cast<std::uint64_t>(cfg.k_clusters));
    add(static_cast<std::uint64_t>(cfg.l_users_per_cluster));
    add(static_cast<std::uint64_t>(cfg.n_total_elements));
    add(static_cast<std::uint64_t>(cfg.quant_bits.bits()));
    add_double(cfg.p_max);
    add_double(cfg.noise_power);
    for (int n : cfg.element_split)
        add(static_cast<std::uint64_t>(n));
    for (double g : cfg.bs_irs_pathloss.distributed)
        add_double(g);
    add_double(cfg.bs_irs_pathloss.centralized);
    for (double g : cfg.irs_user_pathloss.distributed)
        add_double(g);
    for (double g : cfg.irs_user_pathloss.centralized)
        add_double(g);
    for (const auto& r : cfg.rician_bs_irs.distributed)
        add_double(r.value());
    add_double(cfg.rician_bs_irs.centralized.value());
    for (const auto& r : cfg.rician_irs_user.distributed)
        add_double(r.value());
    for (const auto& r : cfg.rician_irs_user.centralized)
        add_double(r.value());
    add_double(cfg.d_over_lambda);
    add(static_cast<std::uint64_t>(cfg.architecture));
    add(cfg.seed);
    return h;
}

} // namespace irslab

#endif

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

#ifndef IRSLAB_SCHEDULER_HPP
#define IRSLAB_SCHEDULER_HPP

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "irslab/array_response.hpp"
#include "irslab/beamform.hpp"
#include "irslab/capacity.hpp"
#include "irslab/channel.hpp"
#include "irslab/config.hpp"
#include "irslab/errors.hpp"
#include "irslab/parallel.hpp"
#include "irslab/random.hpp"

namespace irslab {

/// Monte-Carlo trial count used when a caller does not choose one.
inline constexpr int default_trials = 10000;

/// One time slot of the hybrid scheme: user l of every cluster served by SDMA.
struct SlotPlan {
    int slot = 0;
    std::vector<int> group;             ///< user index within each cluster (all equal to `slot`)
    std::vector<PhasePattern> patterns; ///< one per cluster surface
    std::vector<ComplexVector> beams;   ///< one per cluster
    std::vector<double> powers;         ///< one per cluster, summing to P_max
};

/*!
 * Statistical-CSI plans: in slot l, surface k is phased against the LoS
 * direction of user (k, l) and the BS steers an MRT beam along the cluster's
 * departure cosine. `powers` defaults to P/K per cluster.
 */
inline std::vector<SlotPlan> build_slot_plans(const SystemConfig& cfg, const AngleSet& angles,
                                              std::optional<std::vector<double>> powers = std::nullopt) {
    validate(cfg);
    detail::require(cfg.architecture == Architecture::Distributed, "build_slot_plans needs the distributed layout");
    validate_angles(cfg, angles);
    const auto k = static_cast<std::size_t>(cfg.k_clusters);
    const std::vector<double> p = powers.value_or(std::vector<double>(k, cfg.p_max / cfg.k_clusters));
    detail::require(p.size() == k, "build_slot_plans: powers must list k_clusters entries");
    const auto counts = element_counts(cfg);
    std::vector<SlotPlan> plans;
    for (int l = 0; l < cfg.l_users_per_cluster; ++l) {
        SlotPlan plan;
        plan.slot = l;
        for (std::size_t c = 0; c < k; ++c) {
            const ComplexVector a_s = surface_response(counts[c], angles.irs_aoa[c], cfg.d_over_lambda);
            const ComplexVector h_los = surface_response(
                counts[c], angles.irs_user_aod[cfg.user_index(static_cast<int>(c), l)], cfg.d_over_lambda);
            plan.group.push_back(l);
            plan.patterns.push_back(optimal_phase_pattern(h_los, a_s, cfg.quant_bits));
            plan.beams.push_back(mrt_beamformer(angles.bs_aod[c], cfg.m_antennas, p[c], cfg.d_over_lambda));
            plan.powers.push_back(p[c]);
        }
        plans.push_back(std::move(plan));
    }
    return plans;
}

/// Received signal and interference powers of the scheduled user of cluster k.
struct SinrTerms {
    double signal = 0.0;
    double interference = 0.0;
};

inline SinrTerms slot_terms(const ChannelRealization& real, const SlotPlan& plan, int k) {
    detail::require(real.architecture == Architecture::Distributed, "slot_sinr needs a distributed realization");
    detail::require(k >= 0 && static_cast<std::size_t>(k) < plan.beams.size(), "slot_sinr: cluster out of range");
    const auto ks = static_cast<std::size_t>(k);
    const ComplexVector& h_r = real.irs_user.at(ks).at(static_cast<std::size_t>(plan.group[ks]));
    const ComplexVector h = effective_channel(h_r, plan.patterns[ks], real.bs_irs.at(ks));
    SinrTerms t;
    for (std::size_t m = 0; m < plan.beams.size(); ++m) {
        if (plan.beams[m].size() != h.size())
            throw ValidationError("slot_sinr: beam length does not match the BS array");
        const double p = std::norm(h.dot(plan.beams[m]));
        (m == ks ? t.signal : t.interference) += p;
    }
    return t;
}

/// |h^H w_k|^2 / (sum_{m != k} |h^H w_m|^2 + sigma^2)
inline double slot_sinr(const ChannelRealization& real, const SlotPlan& plan, int k, double noise_power) {
    const auto t = slot_terms(real, plan, k);
    return t.signal / (t.interference + noise_power);
}

/*!
 * Monte-Carlo mean of (1/L) sum_l sum_k log2(1 + SINR) over independent
 * realizations; trial t uses seed derive_trial_seed(seed, t).
 */
inline RateReport hybrid_sum_rate(const SystemConfig& cfg, const AngleSet& angles, int trials, std::uint64_t seed,
                                  unsigned threads = 1) {
    detail::require(trials >= 1, "hybrid_sum_rate: trials must be >= 1");
    const auto plans = build_slot_plans(cfg, angles);
    const auto users = cfg.user_count();
    const double inv_l = 1.0 / cfg.l_users_per_cluster;
    const auto per_trial = parallel_map(static_cast<std::size_t>(trials), threads, [&](std::size_t t) {
        const auto real = synth_channels(cfg, angles, derive_trial_seed(seed, t));
        std::vector<double> rates(users);
        for (const auto& plan : plans)
            for (int k = 0; k < cfg.k_clusters; ++k)
                rates[cfg.user_index(k, plan.slot)] =
                    inv_l * std::log2(1.0 + slot_sinr(real, plan, k, cfg.noise_power));
        return rates;
    });
    RateReport r;
    r.architecture = Architecture::Distributed;
    std::vector<double> column(per_trial.size());
    for (std::size_t u = 0; u < users; ++u) {
        for (std::size_t t = 0; t < per_trial.size(); ++t)
            column[t] = per_trial[t][u];
        r.user_rates.push_back(ordered_mean(column));
    }
    r.sum_rate = pairwise_sum(r.user_rates);
    r.powers = plans.front().powers;
    r.time_shares.assign(users, inv_l);
    return r;
}

/*!
 * Monte-Carlo TDMA through the central surface: every user is served alone
 * with full power for a 1/(K L) share of time, with the surface phased against
 * its LoS direction.
 */
inline RateReport centralized_tdma_rate_monte_carlo(const SystemConfig& cfg, const AngleSet& angles, int trials,
                                                    std::uint64_t seed, unsigned threads = 1) {
    detail::require(trials >= 1, "centralized_tdma_rate_monte_carlo: trials must be >= 1");
    SystemConfig c = cfg;
    c.architecture = Architecture::Centralized;
    validate(c);
    validate_angles(c, angles);
    const auto users = c.user_count();
    const ComplexVector a_s = surface_response(c.n_total_elements, angles.centralized_irs_aoa, c.d_over_lambda);
    const ComplexVector w = mrt_beamformer(angles.centralized_aod, c.m_antennas, c.p_max, c.d_over_lambda);
    std::vector<PhasePattern> patterns;
    for (std::size_t u = 0; u < users; ++u)
        patterns.push_back(optimal_phase_pattern(
            surface_response(c.n_total_elements, angles.centralized_user_aod[u], c.d_over_lambda), a_s, c.quant_bits));
    const double share = 1.0 / static_cast<double>(users);
    const auto per_trial = parallel_map(static_cast<std::size_t>(trials), threads, [&](std::size_t t) {
        const auto real = synth_channels(c, angles, derive_trial_seed(seed, t));
        std::vector<double> rates(users);
        for (int k = 0; k < c.k_clusters; ++k) {
            for (int l = 0; l < c.l_users_per_cluster; ++l) {
                const auto u = c.user_index(k, l);
                const ComplexVector h = effective_channel(real.irs_user[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)],
                                                          patterns[u], real.bs_irs.front());
                rates[u] = share * std::log2(1.0 + std::norm(h.dot(w)) / c.noise_power);
            }
        }
        return rates;
    });
    RateReport r;
    r.architecture = Architecture::Centralized;
    std::vector<double> column(per_trial.size());
    for (std::size_t u = 0; u < users; ++u) {
        for (std::size_t t = 0; t < per_trial.size(); ++t)
            column[t] = per_trial[t][u];
        r.user_rates.push_back(ordered_mean(column));
    }
    r.sum_rate = pairwise_sum(r.user_rates);
    r.powers.assign(users, c.p_max);
    r.time_shares.assign(users, share);
    return r;
}

enum class PairKind { IntraCluster, InterCluster };

inline const char* to_string(PairKind kind) { return kind == PairKind::IntraCluster ? "intra" : "inter"; }

/// Inter: (2 delta + 1) / ((delta + 1)^2 M). Intra adds delta^2 / (delta + 1)^2.
inline double correlation_closed_form(const RicianFactor& delta, int m, PairKind kind) {
    detail::require(m >= 1, "correlation_closed_form: m must be >= 1");
    const double eta = delta.los_power_share();
    const double inter = (1.0 - eta * eta) / m;
    return kind == PairKind::InterCluster ? inter : inter + eta * eta;
}

struct CorrelationEstimate {
    PairKind kind = PairKind::InterCluster;
    double closed_form = 0.0;
    double monte_carlo = 0.0;
    int trials = 0;
    std::uint64_t seed = 0;
    bool few_trials = false; ///< fewer than 100 trials
};

/*!
 * Squared correlation E|h1^H h2|^2 / (E||h1||^2 E||h2||^2) between two users'
 * effective channels under uniformly random continuous surface phases.
 *
 * The IRS->user links are LoS with directions drawn uniformly per trial; the
 * BS->IRS links use the configured per-cluster factor and path loss with the
 * ideal BS departure set. Inter-cluster pairs use clusters 0 and 1, intra
 * pairs two users of cluster 0.
 */
inline CorrelationEstimate correlation_monte_carlo(const SystemConfig& cfg, PairKind kind, int trials,
                                                   std::uint64_t seed, unsigned threads = 1) {
    validate(cfg);
    detail::require(trials >= 1, "correlation_monte_carlo: trials must be >= 1");
    detail::require(kind == PairKind::IntraCluster || cfg.k_clusters >= 2,
                    "correlation_monte_carlo: inter-cluster pairs need K >= 2");
    const auto bs_aod = ideal_aod_set(cfg.m_antennas, cfg.k_clusters, cfg.d_over_lambda);
    const auto counts = element_counts(cfg);
    const int c1 = 0;
    const int c2 = kind == PairKind::InterCluster ? 1 : 0;
    const int m = cfg.m_antennas;
    const double dl = cfg.d_over_lambda;

    struct Sample {
        double cross = 0.0;
        double norm1 = 0.0;
        double norm2 = 0.0;
    };
    const auto samples = parallel_map(static_cast<std::size_t>(trials), threads, [&](std::size_t t) {
        Rng rng(derive_trial_seed(seed, t));
        auto draw_dir = [&rng] {
            const double x = rng.uniform(-1.0, 1.0);
            return DirectionPair{x, rng.uniform(-1.0, 1.0)};
        };
        auto user_channel = [&](int k, const ComplexMatrix& g, const PhasePattern& theta) {
            const ComplexVector h_r = std::sqrt(cfg.irs_user_pathloss.distributed[cfg.user_index(k, 0)]) *
                                      surface_response(counts[static_cast<std::size_t>(k)], draw_dir(), dl);
            return effective_channel(h_r, theta, g);
        };
        auto surface = [&](int k) {
            const auto ks = static_cast<std::size_t>(k);
            const ComplexVector a_s = surface_response(counts[ks], draw_dir(), dl);
            const ComplexVector a_m = ula_response(m, bs_aod[ks], dl);
            ComplexMatrix g = detail::draw_bs_irs(rng, counts[ks], m, cfg.bs_irs_pathloss.distributed[ks],
                                                  cfg.rician_bs_irs.distributed[ks], a_s, a_m);
            std::vector<double> phases(static_cast<std::size_t>(counts[ks]));
            for (auto& p : phases)
                p = rng.uniform_phase();
            return std::pair{std::move(g), PhasePattern::continuous(std::move(phases))};
        };
        const auto [g1, theta1] = surface(c1);
        const ComplexVector h1 = user_channel(c1, g1, theta1);
        ComplexVector h2;
        if (c2 == c1) {
            h2 = user_channel(c1, g1, theta1);
        } else {
            const auto [g2, theta2] = surface(c2);
            h2 = user_channel(c2, g2, theta2);
        }
        return Sample{std::norm(h1.dot(h2)), h1.squaredNorm(), h2.squaredNorm()};
    });
    std::vector<double> cross;
    std::vector<double> n1;
    std::vector<double> n2;
    for (const auto& s : samples) {
        cross.push_back(s.cross);
        n1.push_back(s.norm1);
        n2.push_back(s.norm2);
    }
    CorrelationEstimate est;
    est.kind = kind;
    est.closed_form = correlation_closed_form(cfg.rician_bs_irs.distributed[static_cast<std::size_t>(c1)], m, kind);
    est.monte_carlo = ordered_mean(cross) / (ordered_mean(n1) * ordered_mean(n2));
    est.trials = trials;
    est.seed = seed;
    est.few_trials = trials < 100;
    return est;
}

namespace detail {

inline double common_bs_irs_share(const SystemConfig& cfg) {
    const auto& d = cfg.rician_bs_irs.distributed;
    for (const auto& f : d)
        if (!(f == d.front()))
            throw ValidationError("ergodic rate: the BS->IRS Rician factor must be common to all clusters");
    for (const auto& f : cfg.rician_irs_user.distributed)
        if (!f.is_los())
            throw ValidationError("ergodic rate: IRS->user links must be LoS");
    return d.front().los_power_share();
}

} // namespace detail

/*!
 * log2(1 + S / (I + sigma^2)) with
 *   S = p_k rho^2 (eta M N_k^2 q + (1 - eta) N_k),
 *   I = rho^2 sum_{i != k} p_i (1 - eta) N_k.
 */
inline double ergodic_rate_closed_form(const SystemConfig& cfg, int k, int l, const std::vector<double>& powers) {
    validate(cfg);
    detail::require(k >= 0 && k < cfg.k_clusters && l >= 0 && l < cfg.l_users_per_cluster,
                    "ergodic_rate_closed_form: user index out of range");
    detail::require(powers.size() == static_cast<std::size_t>(cfg.k_clusters),
                    "ergodic_rate_closed_form: powers must list k_clusters entries");
    const double eta = detail::common_bs_irs_share(cfg);
    const double rho2 = concatenated_gain(cfg, k, l);
    const double nk = element_counts(cfg)[static_cast<std::size_t>(k)];
    const double q = quantization_gain(cfg.quant_bits);
    const double s = powers[static_cast<std::size_t>(k)] * rho2 * (eta * cfg.m_antennas * nk * nk * q + (1.0 - eta) * nk);
    double others = 0.0;
    for (std::size_t i = 0; i < powers.size(); ++i)
        if (i != static_cast<std::size_t>(k))
            others += powers[i];
    const double interference = rho2 * others * (1.0 - eta) * nk;
    return std::log2(1.0 + s / (interference + cfg.noise_power));
}

/// Monte-Carlo mean of log2(1 + SINR) for user (k, l) under the slot plans built from `powers`.
inline double ergodic_rate_monte_carlo(const SystemConfig& cfg, const AngleSet& angles, int k, int l,
                                       const std::vector<double>& powers, int trials, std::uint64_t seed,
                                       unsigned threads = 1) {
    detail::require(trials >= 1, "ergodic_rate_monte_carlo: trials must be >= 1");
    detail::require(k >= 0 && k < cfg.k_clusters && l >= 0 && l < cfg.l_users_per_cluster,
                    "ergodic_rate_monte_carlo: user index out of range");
    const auto plans = build_slot_plans(cfg, angles, powers);
    const auto& plan = plans[static_cast<std::size_t>(l)];
    const auto rates = parallel_map(static_cast<std::size_t>(trials), threads, [&](std::size_t t) {
        const auto real = synth_channels(cfg, angles, derive_trial_seed(seed, t));
        return std::log2(1.0 + slot_sinr(real, plan, k, cfg.noise_power));
    });
    return ordered_mean(rates);
}

} // namespace irslab

#endif

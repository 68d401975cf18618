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

#ifndef IRSLAB_HARNESS_HPP
#define IRSLAB_HARNESS_HPP

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "irslab/allocation.hpp"
#include "irslab/capacity.hpp"
#include "irslab/channel.hpp"
#include "irslab/config.hpp"
#include "irslab/errors.hpp"
#include "irslab/scenario.hpp"
#include "irslab/scheduler.hpp"
#include "irslab/units.hpp"

namespace irslab {

enum class Command { SweepPower, SweepElements, ThresholdMap, AllocMinrate, AllocSumrate, SweepRician, Region };
enum class SweepVariable { PowerDbm, NElements, RicianDelta, PathlossGapDb };

inline const std::map<std::string, Command>& command_names() {
    static const std::map<std::string, Command> names{
        {"sweep-power", Command::SweepPower},     {"sweep-elements", Command::SweepElements},
        {"threshold-map", Command::ThresholdMap}, {"alloc-minrate", Command::AllocMinrate},
        {"alloc-sumrate", Command::AllocSumrate}, {"sweep-rician", Command::SweepRician},
        {"region", Command::Region},
    };
    return names;
}

inline std::string to_string(Command c) {
    for (const auto& [name, cmd] : command_names())
        if (cmd == c)
            return name;
    return "?";
}

inline const std::map<std::string, SweepVariable>& sweep_variable_names() {
    static const std::map<std::string, SweepVariable> names{
        {"power_dbm", SweepVariable::PowerDbm},
        {"n_elements", SweepVariable::NElements},
        {"rician_delta", SweepVariable::RicianDelta},
        {"pathloss_gap_db", SweepVariable::PathlossGapDb},
    };
    return names;
}

inline std::string to_string(SweepVariable v) {
    for (const auto& [name, var] : sweep_variable_names())
        if (var == v)
            return name;
    return "?";
}

/// Baseline scenario: M = 5, K = 4, N = 200, 30 dBm, -90 dBm noise, -140 dB concatenated LoS links.
inline SystemConfig default_config() {
    return make_homogeneous_config(5, 4, 1, 200, dbm_to_watts(30.0), dbm_to_watts(-90.0), db_to_linear(-140.0));
}

/// Copy of cfg with K clusters; per-cluster and per-user lists repeat their first entry.
inline SystemConfig with_clusters(const SystemConfig& cfg, int k) {
    SystemConfig out = cfg;
    out.k_clusters = k;
    out.element_split.clear();
    const auto kk = static_cast<std::size_t>(k);
    const auto users = out.user_count();
    auto resize = [](auto& v, std::size_t n) {
        if (!v.empty())
            v.assign(n, v.front());
    };
    resize(out.bs_irs_pathloss.distributed, kk);
    resize(out.irs_user_pathloss.distributed, users);
    resize(out.irs_user_pathloss.centralized, users);
    resize(out.rician_bs_irs.distributed, kk);
    resize(out.rician_irs_user.distributed, users);
    resize(out.rician_irs_user.centralized, users);
    return out;
}

/// Everything a subcommand needs, after defaults, preset, scenario file and flags are merged.
struct RunPlan {
    Command command = Command::SweepPower;
    SystemConfig config = default_config();
    AngleOverrides angles;
    SweepVariable variable = SweepVariable::PowerDbm;
    std::optional<double> start;
    std::optional<double> stop;
    std::optional<double> step;
    std::vector<std::string> schemes;
    int trials = default_trials;
    unsigned threads = 0;
    int grid_points = 11;
    std::vector<int> k_list{2, 3, 4, 5};
    std::vector<QuantBits> bits_list{QuantBits::finite(1), QuantBits::finite(2), QuantBits::finite(3),
                                     QuantBits::continuous()};
    std::vector<double> power_dbm_list{20.0, 30.0, 40.0};
};

inline SweepVariable default_variable(Command c) {
    switch (c) {
    case Command::SweepElements:
    case Command::AllocMinrate:
    case Command::AllocSumrate:
        return SweepVariable::NElements;
    case Command::SweepRician:
        return SweepVariable::RicianDelta;
    default:
        return SweepVariable::PowerDbm;
    }
}

/// Valid scheme ids per subcommand.
inline std::vector<std::string> valid_schemes(Command c) {
    switch (c) {
    case Command::SweepPower:
    case Command::SweepElements:
        return {"dist-opt", "cent-opt", "dist-tdma"};
    case Command::AllocMinrate:
        return {"dist-o", "dist-eq", "cent", "dist-exh"};
    case Command::AllocSumrate:
        return {"dist-o", "dist-eq", "cent"};
    case Command::SweepRician:
        return {"dist-closed", "dist-mc", "cent-mc"};
    default:
        return {};
    }
}

inline std::vector<std::string> default_schemes(Command c) {
    auto v = valid_schemes(c);
    if (c == Command::AllocMinrate)
        v.pop_back();
    return v;
}

inline RunPlan make_plan(Command c) {
    RunPlan p;
    p.command = c;
    p.variable = default_variable(c);
    p.schemes = default_schemes(c);
    if (c == Command::AllocMinrate || c == Command::AllocSumrate || c == Command::SweepRician)
        p.config = with_clusters(p.config, 2);
    return p;
}

/// Scales the IRS->user gains of the last cluster by 10^(-gap/10), in both layouts.
inline void apply_pathloss_gap(SystemConfig& cfg, double gap_db) {
    const double factor = db_to_linear(-gap_db);
    const int k = cfg.k_clusters - 1;
    for (int l = 0; l < cfg.l_users_per_cluster; ++l) {
        cfg.irs_user_pathloss.distributed[cfg.user_index(k, l)] *= factor;
        cfg.irs_user_pathloss.centralized[cfg.user_index(k, l)] *= factor;
    }
}

/*!
 * Figure presets. fig2/fig3: K = 4 power and element sweeps; fig4: threshold
 * map; fig5/fig7: element sweeps with concatenated path losses [-140, -150]
 * dB; fig6/fig8: path-loss gap sweeps at N = 200; fig9: Rician sweep.
 */
inline void apply_preset(RunPlan& p, const std::string& name) {
    static const std::map<std::string, Command> owner{
        {"fig2", Command::SweepPower},   {"fig3", Command::SweepElements}, {"fig4", Command::ThresholdMap},
        {"fig5", Command::AllocMinrate}, {"fig6", Command::AllocMinrate},  {"fig7", Command::AllocSumrate},
        {"fig8", Command::AllocSumrate}, {"fig9", Command::SweepRician},
    };
    const auto it = owner.find(name);
    if (it == owner.end())
        throw ValidationError("unknown preset '" + name + "' (valid: fig2 .. fig9)");
    if (it->second != p.command)
        throw ValidationError("preset " + name + " belongs to subcommand " + to_string(it->second));
    SystemConfig base = default_config();
    if (name == "fig2") {
        p.config = base;
        p.variable = SweepVariable::PowerDbm;
        p.start = 10.0, p.stop = 40.0, p.step = 2.0;
    } else if (name == "fig3") {
        p.config = base;
        p.variable = SweepVariable::NElements;
        p.start = 20.0, p.stop = 400.0, p.step = 20.0;
    } else if (name == "fig4") {
        p.config = base;
    } else if (name == "fig5" || name == "fig7") {
        p.config = with_clusters(base, 2);
        apply_pathloss_gap(p.config, 10.0);
        p.variable = SweepVariable::NElements;
        p.start = 50.0, p.stop = 600.0, p.step = 50.0;
    } else if (name == "fig6" || name == "fig8") {
        p.config = with_clusters(base, 2);
        p.variable = SweepVariable::PathlossGapDb;
        p.start = 0.0, p.stop = 20.0, p.step = 2.0;
    } else if (name == "fig9") {
        p.config = with_clusters(base, 2);
        p.variable = SweepVariable::RicianDelta;
        p.start = 1.0, p.stop = 10.0, p.step = 1.0;
    }
}

/// Value of the swept variable in `cfg` (used for single-point runs).
inline double current_value(const SystemConfig& cfg, SweepVariable v) {
    switch (v) {
    case SweepVariable::PowerDbm:
        return watts_to_dbm(cfg.p_max);
    case SweepVariable::NElements:
        return cfg.n_total_elements;
    case SweepVariable::RicianDelta:
        return cfg.rician_bs_irs.distributed.front().value();
    case SweepVariable::PathlossGapDb:
        return 0.0;
    }
    return 0.0;
}

/*!
 * cfg at one sweep point. The Rician sweep sets the distributed BS->IRS
 * factor to delta with LoS IRS->user links, and the centralized IRS->user
 * factor to delta with a LoS BS->IRS link.
 */
inline SystemConfig config_at(const SystemConfig& base, SweepVariable v, double x) {
    SystemConfig cfg = base;
    switch (v) {
    case SweepVariable::PowerDbm:
        cfg.p_max = dbm_to_watts(x);
        break;
    case SweepVariable::NElements: {
        const double r = std::round(x);
        detail::require(std::abs(r - x) < 1e-9 && r >= 1.0, "n_elements sweep values must be positive integers");
        cfg.n_total_elements = static_cast<int>(r);
        cfg.element_split.clear();
        break;
    }
    case SweepVariable::RicianDelta: {
        const RicianFactor d = std::isinf(x) ? RicianFactor::los() : RicianFactor::of(x);
        cfg.rician_bs_irs.distributed.assign(cfg.rician_bs_irs.distributed.size(), d);
        cfg.rician_irs_user.distributed.assign(cfg.rician_irs_user.distributed.size(), RicianFactor::los());
        cfg.rician_bs_irs.centralized = RicianFactor::los();
        cfg.rician_irs_user.centralized.assign(cfg.rician_irs_user.centralized.size(), d);
        break;
    }
    case SweepVariable::PathlossGapDb:
        apply_pathloss_gap(cfg, x);
        break;
    }
    return cfg;
}

inline std::vector<double> sweep_values(const RunPlan& p) {
    if (!p.start && !p.stop && !p.step)
        return {current_value(p.config, p.variable)};
    detail::require(p.start && p.stop && p.step, "sweep range needs start, stop and step together");
    detail::require(*p.step > 0.0, "sweep step must be > 0");
    detail::require(*p.start <= *p.stop, "sweep start must be <= stop");
    const auto count = static_cast<long long>(std::floor((*p.stop - *p.start) / *p.step + 1e-9)) + 1;
    detail::require(count <= 100000, "sweep has too many points");
    std::vector<double> out;
    for (long long i = 0; i < count; ++i)
        out.push_back(*p.start + static_cast<double>(i) * *p.step);
    return out;
}

/// The distributed closed forms need mutually orthogonal BS departures; throws InfeasibleError when none fit.
inline void require_ideal_deployment(const SystemConfig& cfg) {
    (void)ideal_aod_set(cfg.m_antennas, cfg.k_clusters, cfg.d_over_lambda);
}

/// Angles of the run: drawn from the master seed, then scenario overrides.
inline AngleSet resolve_angles(const RunPlan& p) {
    AngleSet a = draw_angles(p.config, p.config.seed);
    p.angles.apply(a);
    return a;
}

struct SchemeValue {
    double objective = 0.0;
    std::vector<double> rates;
};

namespace detail {

inline std::vector<double> centralized_single_user_rates(const SystemConfig& cfg) {
    const double n = cfg.n_total_elements;
    const double q = quantization_gain(cfg.quant_bits);
    std::vector<double> r;
    for (int k = 0; k < cfg.k_clusters; ++k)
        r.push_back(std::log2(1.0 + cfg.p_max * cfg.m_antennas * n * n *
                                        centralized_concatenated_gain(cfg, k, cfg.boundary_user()) * q /
                                        cfg.noise_power));
    return r;
}

inline SchemeValue from_report(const RateReport& r) { return {r.sum_rate, r.user_rates}; }

inline SchemeValue from_allocation(const AllocationResult& a) { return {a.objective, a.rates}; }

} // namespace detail

/// Centralized TDMA with rate-equalizing time shares t_k proportional to 1/r_k.
inline SchemeValue centralized_minrate(const SystemConfig& cfg) {
    const auto r = detail::centralized_single_user_rates(cfg);
    double inv = 0.0;
    for (double x : r) {
        if (!(x > 0.0))
            return {0.0, std::vector<double>(r.size(), 0.0)};
        inv += 1.0 / x;
    }
    return {1.0 / inv, std::vector<double>(r.size(), 1.0 / inv)};
}

/// Centralized sum rate: serve only the user with the largest SNR.
inline SchemeValue centralized_max_sumrate(const SystemConfig& cfg) {
    const auto r = detail::centralized_single_user_rates(cfg);
    const auto best = static_cast<std::size_t>(std::ranges::max_element(r) - r.begin());
    std::vector<double> rates(r.size(), 0.0);
    rates[best] = r[best];
    return {r[best], rates};
}

inline SchemeValue evaluate_scheme(const RunPlan& p, const std::string& scheme, const SystemConfig& cfg,
                                   const AngleSet& angles) {
    switch (p.command) {
    case Command::SweepPower:
    case Command::SweepElements:
        if (scheme == "dist-opt")
            return detail::from_report(distributed_sum_rate(cfg));
        if (scheme == "cent-opt")
            return detail::from_report(centralized_sum_rate(cfg));
        if (scheme == "dist-tdma")
            return detail::from_report(distributed_tdma_sum_rate(cfg));
        break;
    case Command::AllocMinrate:
        if (scheme == "dist-o")
            return detail::from_allocation(minrate_for_split(cfg, maxmin_allocation(cfg).elements));
        if (scheme == "dist-eq")
            return detail::from_allocation(equal_split_allocation(cfg, Objective::MinRate, PowerRule::Equalizing));
        if (scheme == "cent")
            return centralized_minrate(cfg);
        if (scheme == "dist-exh")
            return detail::from_allocation(exhaustive_element_search(cfg, Objective::MinRate, PowerRule::Equalizing));
        break;
    case Command::AllocSumrate:
        if (scheme == "dist-o")
            return detail::from_allocation(exhaustive_element_search(cfg, Objective::SumRate, PowerRule::WaterFilling));
        if (scheme == "dist-eq")
            return detail::from_allocation(sumrate_equal_allocation(cfg));
        if (scheme == "cent")
            return centralized_max_sumrate(cfg);
        break;
    case Command::SweepRician:
        if (scheme == "dist-closed") {
            SchemeValue v;
            const std::vector<double> powers(static_cast<std::size_t>(cfg.k_clusters), cfg.p_max / cfg.k_clusters);
            for (int k = 0; k < cfg.k_clusters; ++k)
                for (int l = 0; l < cfg.l_users_per_cluster; ++l)
                    v.rates.push_back(ergodic_rate_closed_form(cfg, k, l, powers) / cfg.l_users_per_cluster);
            for (double r : v.rates)
                v.objective += r;
            return v;
        }
        if (scheme == "dist-mc")
            return detail::from_report(hybrid_sum_rate(cfg, angles, p.trials, cfg.seed, p.threads));
        if (scheme == "cent-mc")
            return detail::from_report(centralized_tdma_rate_monte_carlo(cfg, angles, p.trials, cfg.seed, p.threads));
        break;
    default:
        break;
    }
    std::string valid;
    for (const auto& s : valid_schemes(p.command))
        valid += (valid.empty() ? "" : ", ") + s;
    throw ValidationError("unknown scheme '" + scheme + "' for " + to_string(p.command) + " (valid: " + valid + ")");
}

namespace detail {

inline std::string fmt_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

inline void write_metadata(std::ostream& os, const RunPlan& p, const AngleSet* angles) {
    os << "# irslab " << to_string(p.command) << '\n';
    os << "# master_seed = " << p.config.seed << '\n';
    os << "# trials = " << p.trials << '\n';
    std::istringstream body(format_scenario(p.config, angles));
    std::string line;
    while (std::getline(body, line))
        os << "# " << line << '\n';
}

inline std::string objective_column(Command c) {
    return c == Command::AllocMinrate ? "min_rate" : "sum_rate";
}

} // namespace detail

/*!
 * Writes the CSV of a sweep subcommand: metadata comments, a header, then
 * one row per (swept value, scheme) in sweep order.
 */
inline void run_sweep(const RunPlan& p, std::ostream& os) {
    detail::require(!p.schemes.empty(), "sweep needs at least one scheme");
    const auto valid = valid_schemes(p.command);
    for (const auto& s : p.schemes)
        if (std::find(valid.begin(), valid.end(), s) == valid.end())
            evaluate_scheme(p, s, p.config, AngleSet{});
    validate(p.config);
    require_ideal_deployment(p.config);
    const auto values = sweep_values(p);
    const AngleSet angles = resolve_angles(p);

    detail::write_metadata(os, p, &angles);
    os << "# swept = " << to_string(p.variable) << '\n';
    os << "# schemes = ";
    for (std::size_t i = 0; i < p.schemes.size(); ++i)
        os << (i ? "," : "") << p.schemes[i];
    os << '\n';
    os << "swept_value,scheme," << detail::objective_column(p.command);
    for (std::size_t u = 0; u < p.config.user_count(); ++u)
        os << ",rate_" << (u + 1);
    os << ",seed\n";
    for (double x : values) {
        const SystemConfig cfg = config_at(p.config, p.variable, x);
        validate(cfg);
        for (const auto& s : p.schemes) {
            const auto v = evaluate_scheme(p, s, cfg, angles);
            os << detail::fmt_value(x) << ',' << s << ',' << detail::fmt_value(v.objective);
            for (double r : v.rates)
                os << ',' << detail::fmt_value(r);
            os << ',' << cfg.seed << '\n';
        }
    }
}

/// CSV of ceil(N_th) and the exact crossover over the (K, b, P) grid; K = 1 and K > M rows are skipped.
inline void run_threshold_map(const RunPlan& p, std::ostream& os) {
    detail::write_metadata(os, p, nullptr);
    std::vector<std::string> notes;
    std::ostringstream rows;
    rows << "k,bits,p_max_dbm,n_th,ceil_n_th,crossover_n\n";
    for (int k : p.k_list) {
        if (k < 2) {
            notes.push_back("K=" + std::to_string(k) + " skipped: threshold undefined for a single cluster");
            continue;
        }
        if (k > p.config.m_antennas) {
            notes.push_back("K=" + std::to_string(k) + " skipped: exceeds M");
            continue;
        }
        for (const auto& b : p.bits_list) {
            for (double pdbm : p.power_dbm_list) {
                SystemConfig cfg = with_clusters(p.config, k);
                cfg.quant_bits = b;
                cfg.p_max = dbm_to_watts(pdbm);
                const auto rep = threshold_report(cfg);
                const double gamma0 = snr_coefficient_homogeneous(cfg);
                rows << k << ',' << (b.is_continuous() ? std::string("continuous") : std::to_string(b.bits())) << ','
                     << detail::fmt_value(pdbm) << ',' << detail::fmt_value(*rep.n_th) << ','
                     << detail::fmt_value(std::ceil(*rep.n_th)) << ',' << detail::fmt_value(*crossover_n(gamma0, k))
                     << '\n';
            }
        }
    }
    for (const auto& n : notes)
        os << "# note: " << n << '\n';
    os << rows.str();
}

/// Capacity-region boundary points of both layouts.
inline void run_region(const RunPlan& p, std::ostream& os) {
    validate(p.config);
    require_ideal_deployment(p.config);
    detail::write_metadata(os, p, nullptr);
    os << "# grid_points = " << p.grid_points << '\n';
    const auto k = static_cast<std::size_t>(p.config.k_clusters);
    os << "architecture,point";
    for (std::size_t i = 0; i < k; ++i)
        os << ",share_" << (i + 1);
    for (std::size_t i = 0; i < k; ++i)
        os << ",rate_" << (i + 1);
    os << ",sum_rate\n";
    auto emit = [&](const char* arch, const std::vector<RegionPoint>& pts) {
        for (std::size_t j = 0; j < pts.size(); ++j) {
            os << arch << ',' << j;
            double sum = 0.0;
            for (double s : pts[j].shares)
                os << ',' << detail::fmt_value(s);
            for (double r : pts[j].rates) {
                os << ',' << detail::fmt_value(r);
                sum += r;
            }
            os << ',' << detail::fmt_value(sum) << '\n';
        }
    };
    emit("distributed", capacity_region_distributed(p.config, p.grid_points));
    emit("centralized", capacity_region_centralized(p.config, p.grid_points));
}

/// Human-readable allocation summary for the plan's base configuration.
inline void write_allocation_report(const RunPlan& p, std::ostream& os) {
    const SystemConfig& cfg = p.config;
    auto list = [](const auto& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i)
            s += (i ? ", " : "") + detail::fmt_value(static_cast<double>(v[i]));
        return "[" + s + "]";
    };
    const bool minrate = p.command == Command::AllocMinrate;
    os << (minrate ? "max-min allocation" : "sum-rate allocation") << " (K = " << cfg.k_clusters
       << ", N = " << cfg.n_total_elements << ")\n";
    if (minrate) {
        const auto a = maxmin_allocation(cfg);
        os << "  closed-form shares : " << list(a.shares) << '\n';
        os << "  rounded elements   : " << list(a.elements) << '\n';
        os << "  powers (W)         : " << list(a.powers) << '\n';
        os << "  min rate           : " << detail::fmt_value(a.objective) << " (continuous), "
           << detail::fmt_value(minrate_for_split(cfg, a.elements).objective) << " (rounded)\n";
        os << "  KKT residual       : " << detail::fmt_value(maxmin_kkt_residual(cfg, a.shares)) << '\n';
        os << "  equal split        : "
           << detail::fmt_value(equal_split_allocation(cfg, Objective::MinRate, PowerRule::Equalizing).objective)
           << '\n';
        os << "  centralized        : " << detail::fmt_value(centralized_minrate(cfg).objective) << '\n';
    } else {
        const auto a = sumrate_equal_allocation(cfg);
        os << "  equal elements     : " << list(a.elements) << '\n';
        os << "  sum rate           : " << detail::fmt_value(a.objective) << (a.small_n ? " (N < 10 K)" : "") << '\n';
        os << "  centralized        : " << detail::fmt_value(centralized_max_sumrate(cfg).objective) << '\n';
    }
    if (cfg.k_clusters <= 3) {
        const auto e = exhaustive_element_search(cfg, minrate ? Objective::MinRate : Objective::SumRate,
                                                 minrate ? PowerRule::Equalizing : PowerRule::WaterFilling);
        os << "  exhaustive search  : " << list(e.elements) << " -> " << detail::fmt_value(e.objective) << '\n';
    }
}

} // namespace irslab

#endif

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

#ifndef IRSLAB_SCENARIO_HPP
#define IRSLAB_SCENARIO_HPP

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "irslab/config.hpp"
#include "irslab/errors.hpp"
#include "irslab/units.hpp"

namespace irslab {

/// Angle entries given explicitly in a scenario; anything absent is drawn.
struct AngleOverrides {
    std::optional<std::vector<double>> bs_aod;
    std::optional<std::vector<DirectionPair>> irs_aoa;
    std::optional<std::vector<DirectionPair>> irs_user_aod;
    std::optional<double> centralized_aod;
    std::optional<DirectionPair> centralized_irs_aoa;
    std::optional<std::vector<DirectionPair>> centralized_user_aod;

    void apply(AngleSet& a) const {
        if (bs_aod)
            a.bs_aod = *bs_aod;
        if (irs_aoa)
            a.irs_aoa = *irs_aoa;
        if (irs_user_aod)
            a.irs_user_aod = *irs_user_aod;
        if (centralized_aod)
            a.centralized_aod = *centralized_aod;
        if (centralized_irs_aoa)
            a.centralized_irs_aoa = *centralized_irs_aoa;
        if (centralized_user_aod)
            a.centralized_user_aod = *centralized_user_aod;
    }
};

/// Run controls from the [experiment] section.
struct ExperimentSettings {
    std::optional<int> trials;
    std::optional<unsigned> threads;
    std::optional<std::vector<std::string>> schemes;
    std::optional<double> start;
    std::optional<double> stop;
    std::optional<double> step;
    std::optional<int> grid_points;
};

/// Raw sections of a scenario file: section -> key -> (value, line number).
struct ScenarioText {
    struct Entry {
        std::string value;
        int line = 0;
    };
    std::map<std::string, std::map<std::string, Entry>> sections;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos)
        return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline const std::map<std::string, std::vector<std::string>>& scenario_schema() {
    static const std::map<std::string, std::vector<std::string>> schema{
        {"system",
         {"m_antennas", "k_clusters", "l_users_per_cluster", "n_total_elements", "quant_bits", "p_max", "noise_power",
          "element_split", "d_over_lambda", "architecture", "seed"}},
        {"pathloss",
         {"bs_irs_pathloss", "bs_irs_pathloss_centralized", "irs_user_pathloss", "irs_user_pathloss_centralized"}},
        {"rician",
         {"rician_bs_irs", "rician_bs_irs_centralized", "rician_irs_user", "rician_irs_user_centralized"}},
        {"angles",
         {"bs_aod", "irs_aoa", "irs_user_aod", "centralized_aod", "centralized_irs_aoa", "centralized_user_aod"}},
        {"experiment", {"trials", "threads", "schemes", "start", "stop", "step", "grid_points"}},
    };
    return schema;
}

inline std::vector<std::string> split_list(std::string_view s) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    for (;;) {
        const auto comma = s.find(',', pos);
        out.emplace_back(trim(s.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos)));
        if (comma == std::string_view::npos)
            break;
        pos = comma + 1;
    }
    return out;
}

[[noreturn]] inline void scenario_error(int line, const std::string& key, const std::string& what) {
    throw ValidationError("scenario line " + std::to_string(line) + ", key '" + key + "': " + what);
}

inline double parse_double(std::string_view s, int line, const std::string& key) {
    double v = 0.0;
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end || !std::isfinite(v))
        scenario_error(line, key, "expected a finite number, got '" + std::string(s) + "'");
    return v;
}

template <typename Int>
Int parse_int(std::string_view s, int line, const std::string& key) {
    Int v{};
    const auto* end = s.data() + s.size();
    const auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || ptr != end)
        scenario_error(line, key, "expected an integer, got '" + std::string(s) + "'");
    return v;
}

enum class Quantity { Power, Gain, Plain };

/// Number with an optional unit: dBm / dBW / W for powers, dB for gains.
inline double parse_quantity(std::string_view s, Quantity q, int line, const std::string& key) {
    const auto space = s.find_last_of(" \t");
    std::string_view num = s;
    std::string_view unit;
    if (space != std::string_view::npos) {
        num = trim(s.substr(0, space));
        unit = trim(s.substr(space + 1));
    }
    const double v = parse_double(num, line, key);
    if (unit.empty())
        return v;
    if (q == Quantity::Power && unit == "dBm")
        return dbm_to_watts(v);
    if (q == Quantity::Power && unit == "dBW")
        return db_to_linear(v);
    if (q == Quantity::Power && unit == "W")
        return v;
    if (q == Quantity::Gain && unit == "dB")
        return db_to_linear(v);
    scenario_error(line, key, "unit '" + std::string(unit) + "' not allowed here");
}

/// Parses a comma list; a single entry is repeated to `count` entries.
template <typename T, typename Parse>
std::vector<T> parse_list(const ScenarioText::Entry& e, const std::string& key, std::size_t count, Parse parse) {
    const auto items = split_list(e.value);
    if (items.size() != 1 && items.size() != count)
        scenario_error(e.line, key, "expected 1 or " + std::to_string(count) + " entries, got " +
                                        std::to_string(items.size()));
    std::vector<T> out;
    for (const auto& it : items)
        out.push_back(parse(it));
    if (out.size() == 1 && count > 1)
        out.assign(count, out.front());
    return out;
}

inline RicianFactor parse_rician(std::string_view s, int line, const std::string& key) {
    if (s == "los")
        return RicianFactor::los();
    const double v = parse_double(s, line, key);
    if (v < 0.0)
        scenario_error(line, key, "Rician factor must be >= 0 or los");
    return RicianFactor::of(v);
}

inline std::vector<DirectionPair> parse_pairs(const ScenarioText::Entry& e, const std::string& key,
                                              std::size_t count) {
    const auto items = split_list(e.value);
    if (items.size() != 2 * count)
        scenario_error(e.line, key, "expected " + std::to_string(2 * count) + " numbers (x, y per entry)");
    std::vector<DirectionPair> out;
    for (std::size_t i = 0; i < count; ++i)
        out.push_back({parse_double(items[2 * i], e.line, key), parse_double(items[2 * i + 1], e.line, key)});
    return out;
}

} // namespace detail

/// Strict INI-style reader: known sections and keys only, no duplicates.
inline ScenarioText parse_scenario_text(std::istream& in) {
    ScenarioText text;
    const auto& schema = detail::scenario_schema();
    std::string raw;
    std::string section;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto s = detail::trim(raw);
        if (s.empty() || s.front() == '#' || s.front() == ';')
            continue;
        if (s.front() == '[') {
            if (s.back() != ']')
                throw ValidationError("scenario line " + std::to_string(line) + ": malformed section header");
            section = std::string(detail::trim(s.substr(1, s.size() - 2)));
            if (!schema.contains(section))
                throw ValidationError("scenario line " + std::to_string(line) + ": unknown section [" + section + "]");
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string_view::npos)
            throw ValidationError("scenario line " + std::to_string(line) + ": expected key = value");
        const std::string key(detail::trim(s.substr(0, eq)));
        const std::string value(detail::trim(s.substr(eq + 1)));
        if (section.empty())
            throw ValidationError("scenario line " + std::to_string(line) + ": key '" + key + "' outside any section");
        const auto& keys = schema.at(section);
        if (std::find(keys.begin(), keys.end(), key) == keys.end())
            throw ValidationError("scenario line " + std::to_string(line) + ": unknown key '" + key + "' in [" +
                                  section + "]");
        if (value.empty())
            throw ValidationError("scenario line " + std::to_string(line) + ": empty value for '" + key + "'");
        auto& sec = text.sections[section];
        if (sec.contains(key))
            throw ValidationError("scenario line " + std::to_string(line) + ": duplicate key '" + key + "'");
        sec[key] = {value, line};
    }
    return text;
}

/*!
 * Overlays a parsed scenario on `cfg`. List fields accept one value per
 * cluster (or per user) or a single value applied to all. Resizes path-loss
 * and Rician lists to a changed K or L by repeating their first entry.
 */
inline void apply_scenario(const ScenarioText& text, SystemConfig& cfg, AngleOverrides& angles,
                           ExperimentSettings& experiment) {
    using namespace detail;
    auto find = [&](const char* section, const char* key) -> const ScenarioText::Entry* {
        const auto s = text.sections.find(section);
        if (s == text.sections.end())
            return nullptr;
        const auto k = s->second.find(key);
        return k == s->second.end() ? nullptr : &k->second;
    };
    auto positive_int = [&](const char* key, int& dst) {
        if (const auto* e = find("system", key)) {
            dst = parse_int<int>(e->value, e->line, key);
            if (dst < 1)
                scenario_error(e->line, key, "must be >= 1");
        }
    };
    positive_int("m_antennas", cfg.m_antennas);
    positive_int("k_clusters", cfg.k_clusters);
    positive_int("l_users_per_cluster", cfg.l_users_per_cluster);
    positive_int("n_total_elements", cfg.n_total_elements);
    if (const auto* e = find("system", "quant_bits")) {
        if (e->value == "continuous")
            cfg.quant_bits = QuantBits::continuous();
        else
            cfg.quant_bits = QuantBits::finite(parse_int<int>(e->value, e->line, "quant_bits"));
    }
    if (const auto* e = find("system", "p_max"))
        cfg.p_max = parse_quantity(e->value, Quantity::Power, e->line, "p_max");
    if (const auto* e = find("system", "noise_power"))
        cfg.noise_power = parse_quantity(e->value, Quantity::Power, e->line, "noise_power");
    if (const auto* e = find("system", "d_over_lambda"))
        cfg.d_over_lambda = parse_double(e->value, e->line, "d_over_lambda");
    if (const auto* e = find("system", "architecture")) {
        if (e->value == "distributed")
            cfg.architecture = Architecture::Distributed;
        else if (e->value == "centralized")
            cfg.architecture = Architecture::Centralized;
        else
            scenario_error(e->line, "architecture", "expected distributed or centralized");
    }
    if (const auto* e = find("system", "seed"))
        cfg.seed = parse_int<std::uint64_t>(e->value, e->line, "seed");
    if (const auto* e = find("system", "element_split")) {
        if (e->value == "equal") {
            cfg.element_split.clear();
        } else {
            cfg.element_split.clear();
            for (const auto& it : split_list(e->value))
                cfg.element_split.push_back(parse_int<int>(it, e->line, "element_split"));
        }
    }

    const auto k = static_cast<std::size_t>(cfg.k_clusters);
    const auto users = cfg.user_count();
    auto resize = [](auto& v, std::size_t n) {
        if (v.size() != n && !v.empty())
            v.assign(n, v.front());
    };
    resize(cfg.bs_irs_pathloss.distributed, k);
    resize(cfg.irs_user_pathloss.distributed, users);
    resize(cfg.irs_user_pathloss.centralized, users);
    resize(cfg.rician_bs_irs.distributed, k);
    resize(cfg.rician_irs_user.distributed, users);
    resize(cfg.rician_irs_user.centralized, users);

    auto gain_parser = [](const char* key, int line) {
        return [key, line](const std::string& s) { return parse_quantity(s, Quantity::Gain, line, key); };
    };
    auto rician_parser = [](const char* key, int line) {
        return [key, line](const std::string& s) { return parse_rician(s, line, key); };
    };
    if (const auto* e = find("pathloss", "bs_irs_pathloss"))
        cfg.bs_irs_pathloss.distributed = parse_list<double>(*e, "bs_irs_pathloss", k, gain_parser("bs_irs_pathloss", e->line));
    if (const auto* e = find("pathloss", "bs_irs_pathloss_centralized"))
        cfg.bs_irs_pathloss.centralized = parse_quantity(e->value, Quantity::Gain, e->line, "bs_irs_pathloss_centralized");
    if (const auto* e = find("pathloss", "irs_user_pathloss"))
        cfg.irs_user_pathloss.distributed =
            parse_list<double>(*e, "irs_user_pathloss", users, gain_parser("irs_user_pathloss", e->line));
    if (const auto* e = find("pathloss", "irs_user_pathloss_centralized"))
        cfg.irs_user_pathloss.centralized = parse_list<double>(*e, "irs_user_pathloss_centralized", users,
                                                               gain_parser("irs_user_pathloss_centralized", e->line));
    if (const auto* e = find("rician", "rician_bs_irs"))
        cfg.rician_bs_irs.distributed =
            parse_list<RicianFactor>(*e, "rician_bs_irs", k, rician_parser("rician_bs_irs", e->line));
    if (const auto* e = find("rician", "rician_bs_irs_centralized"))
        cfg.rician_bs_irs.centralized = parse_rician(e->value, e->line, "rician_bs_irs_centralized");
    if (const auto* e = find("rician", "rician_irs_user"))
        cfg.rician_irs_user.distributed =
            parse_list<RicianFactor>(*e, "rician_irs_user", users, rician_parser("rician_irs_user", e->line));
    if (const auto* e = find("rician", "rician_irs_user_centralized"))
        cfg.rician_irs_user.centralized = parse_list<RicianFactor>(
            *e, "rician_irs_user_centralized", users, rician_parser("rician_irs_user_centralized", e->line));

    if (const auto* e = find("angles", "bs_aod"))
        angles.bs_aod = parse_list<double>(*e, "bs_aod", k, [e](const std::string& s) {
            return parse_double(s, e->line, "bs_aod");
        });
    if (const auto* e = find("angles", "irs_aoa"))
        angles.irs_aoa = parse_pairs(*e, "irs_aoa", k);
    if (const auto* e = find("angles", "irs_user_aod"))
        angles.irs_user_aod = parse_pairs(*e, "irs_user_aod", users);
    if (const auto* e = find("angles", "centralized_aod"))
        angles.centralized_aod = parse_double(e->value, e->line, "centralized_aod");
    if (const auto* e = find("angles", "centralized_irs_aoa"))
        angles.centralized_irs_aoa = parse_pairs(*e, "centralized_irs_aoa", 1).front();
    if (const auto* e = find("angles", "centralized_user_aod"))
        angles.centralized_user_aod = parse_pairs(*e, "centralized_user_aod", users);

    if (const auto* e = find("experiment", "trials"))
        experiment.trials = parse_int<int>(e->value, e->line, "trials");
    if (const auto* e = find("experiment", "threads"))
        experiment.threads = parse_int<unsigned>(e->value, e->line, "threads");
    if (const auto* e = find("experiment", "schemes"))
        experiment.schemes = split_list(e->value);
    if (const auto* e = find("experiment", "start"))
        experiment.start = parse_double(e->value, e->line, "start");
    if (const auto* e = find("experiment", "stop"))
        experiment.stop = parse_double(e->value, e->line, "stop");
    if (const auto* e = find("experiment", "step"))
        experiment.step = parse_double(e->value, e->line, "step");
    if (const auto* e = find("experiment", "grid_points"))
        experiment.grid_points = parse_int<int>(e->value, e->line, "grid_points");
}

inline ScenarioText load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error("cannot open scenario file '" + path + "'");
    return parse_scenario_text(in);
}

namespace detail {

inline std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

template <typename T, typename Fmt>
std::string join(const std::vector<T>& v, Fmt fmt) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i)
        out += (i ? ", " : "") + fmt(v[i]);
    return out;
}

inline std::string fmt_rician(const RicianFactor& r) { return r.is_los() ? "los" : fmt_double(r.value()); }

inline std::string fmt_pair(const DirectionPair& p) { return fmt_double(p.x) + ", " + fmt_double(p.y); }

} // namespace detail

/// Scenario text of a fully resolved config and angle set, in linear units; parses back to the same values.
inline std::string format_scenario(const SystemConfig& cfg, const AngleSet* angles = nullptr) {
    using namespace detail;
    std::ostringstream os;
    os << "[system]\n";
    os << "m_antennas = " << cfg.m_antennas << '\n';
    os << "k_clusters = " << cfg.k_clusters << '\n';
    os << "l_users_per_cluster = " << cfg.l_users_per_cluster << '\n';
    os << "n_total_elements = " << cfg.n_total_elements << '\n';
    os << "quant_bits = "
       << (cfg.quant_bits.is_continuous() ? std::string("continuous") : std::to_string(cfg.quant_bits.bits())) << '\n';
    os << "p_max = " << fmt_double(cfg.p_max) << " W\n";
    os << "noise_power = " << fmt_double(cfg.noise_power) << " W\n";
    os << "element_split = "
       << (cfg.element_split.empty() ? std::string("equal")
                                     : join(cfg.element_split, [](int n) { return std::to_string(n); }))
       << '\n';
    os << "d_over_lambda = " << fmt_double(cfg.d_over_lambda) << '\n';
    os << "architecture = " << to_string(cfg.architecture) << '\n';
    os << "seed = " << cfg.seed << '\n';
    os << "[pathloss]\n";
    os << "bs_irs_pathloss = " << join(cfg.bs_irs_pathloss.distributed, fmt_double) << '\n';
    os << "bs_irs_pathloss_centralized = " << fmt_double(cfg.bs_irs_pathloss.centralized) << '\n';
    os << "irs_user_pathloss = " << join(cfg.irs_user_pathloss.distributed, fmt_double) << '\n';
    os << "irs_user_pathloss_centralized = " << join(cfg.irs_user_pathloss.centralized, fmt_double) << '\n';
    os << "[rician]\n";
    os << "rician_bs_irs = " << join(cfg.rician_bs_irs.distributed, fmt_rician) << '\n';
    os << "rician_bs_irs_centralized = " << fmt_rician(cfg.rician_bs_irs.centralized) << '\n';
    os << "rician_irs_user = " << join(cfg.rician_irs_user.distributed, fmt_rician) << '\n';
    os << "rician_irs_user_centralized = " << join(cfg.rician_irs_user.centralized, fmt_rician) << '\n';
    if (angles) {
        os << "[angles]\n";
        os << "bs_aod = " << join(angles->bs_aod, fmt_double) << '\n';
        os << "irs_aoa = " << join(angles->irs_aoa, fmt_pair) << '\n';
        os << "irs_user_aod = " << join(angles->irs_user_aod, fmt_pair) << '\n';
        os << "centralized_aod = " << fmt_double(angles->centralized_aod) << '\n';
        os << "centralized_irs_aoa = " << fmt_pair(angles->centralized_irs_aoa) << '\n';
        os << "centralized_user_aod = " << join(angles->centralized_user_aod, fmt_pair) << '\n';
    }
    return os.str();
}

} // namespace irslab

#endif

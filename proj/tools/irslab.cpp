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

// Command-line front end: one subcommand per figure experiment, CSV output.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "irslab/irslab.hpp"

namespace {

struct Flags {
    std::string config;
    std::string out;
    std::string preset;
    std::string bits;
    std::string schemes;
    std::string sweep;
    std::string k_list;
    std::string bits_list;
    std::string power_list;
    std::uint64_t seed = 0;
    int trials = 0;
    unsigned threads = 0;
    double start = 0.0;
    double stop = 0.0;
    double step = 0.0;
    int elements = 0;
    int grid = 0;
};

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(item);
    return out;
}

irslab::QuantBits parse_bits(const std::string& s) {
    if (s == "continuous")
        return irslab::QuantBits::continuous();
    std::size_t used = 0;
    int b = 0;
    try {
        b = std::stoi(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size())
        throw irslab::ValidationError("--bits expects an integer or 'continuous', got '" + s + "'");
    return irslab::QuantBits::finite(b);
}

double parse_number(const std::string& s, const char* flag) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size())
        throw irslab::ValidationError(std::string(flag) + ": bad number '" + s + "'");
    return v;
}

struct Bound {
    CLI::Option* config = nullptr;
    CLI::Option* seed = nullptr;
    CLI::Option* out = nullptr;
    CLI::Option* trials = nullptr;
    CLI::Option* bits = nullptr;
    CLI::Option* preset = nullptr;
    CLI::Option* schemes = nullptr;
    CLI::Option* threads = nullptr;
    CLI::Option* start = nullptr;
    CLI::Option* stop = nullptr;
    CLI::Option* step = nullptr;
    CLI::Option* elements = nullptr;
    CLI::Option* grid = nullptr;
    CLI::Option* sweep = nullptr;
    CLI::Option* k_list = nullptr;
    CLI::Option* bits_list = nullptr;
    CLI::Option* power_list = nullptr;
};

Bound add_options(CLI::App& sub, Flags& f, irslab::Command cmd) {
    Bound b;
    b.config = sub.add_option("--config", f.config, "scenario file ([system], [pathloss], [rician], [angles], [experiment])");
    b.seed = sub.add_option("--seed", f.seed, "master seed");
    b.out = sub.add_option("--out", f.out, "output CSV path (default: stdout)");
    b.trials = sub.add_option("--trials", f.trials, "Monte-Carlo trials")->check(CLI::PositiveNumber);
    b.bits = sub.add_option("--bits", f.bits, "phase resolution in bits, or 'continuous'");
    b.preset = sub.add_option("--preset", f.preset, "figure preset (fig2 .. fig9)");
    b.threads = sub.add_option("--threads", f.threads, "worker threads (0 = all cores); output does not depend on it");
    b.elements = sub.add_option("--elements", f.elements, "total number of surface elements N")->check(CLI::PositiveNumber);
    using irslab::Command;
    if (cmd != Command::ThresholdMap && cmd != Command::Region) {
        b.schemes = sub.add_option("--schemes", f.schemes, "comma-separated scheme ids");
        b.start = sub.add_option("--start", f.start, "first swept value");
        b.stop = sub.add_option("--stop", f.stop, "last swept value");
        b.step = sub.add_option("--step", f.step, "sweep increment");
    }
    if (cmd == Command::AllocMinrate || cmd == Command::AllocSumrate)
        b.sweep = sub.add_option("--sweep", f.sweep, "swept variable: n_elements, pathloss_gap_db or power_dbm");
    if (cmd == Command::Region)
        b.grid = sub.add_option("--grid", f.grid, "grid points per simplex edge")->check(CLI::Range(2, 1000000));
    if (cmd == Command::ThresholdMap) {
        b.k_list = sub.add_option("--k-list", f.k_list, "cluster counts, e.g. 2,3,4,5");
        b.bits_list = sub.add_option("--bits-list", f.bits_list, "phase resolutions, e.g. 1,2,3,continuous");
        b.power_list = sub.add_option("--power-list", f.power_list, "transmit powers in dBm, e.g. 20,30,40");
    }
    return b;
}

bool given(const CLI::Option* o) { return o != nullptr && o->count() > 0; }

irslab::RunPlan build_plan(irslab::Command cmd, const Flags& f, const Bound& b) {
    using namespace irslab;
    RunPlan p = make_plan(cmd);
    if (given(b.preset))
        apply_preset(p, f.preset);
    if (given(b.config)) {
        ExperimentSettings ex;
        apply_scenario(load_scenario_file(f.config), p.config, p.angles, ex);
        if (ex.trials)
            p.trials = *ex.trials;
        if (ex.threads)
            p.threads = *ex.threads;
        if (ex.schemes)
            p.schemes = *ex.schemes;
        if (ex.start)
            p.start = ex.start;
        if (ex.stop)
            p.stop = ex.stop;
        if (ex.step)
            p.step = ex.step;
        if (ex.grid_points)
            p.grid_points = *ex.grid_points;
    }
    if (given(b.seed))
        p.config.seed = f.seed;
    if (given(b.trials))
        p.trials = f.trials;
    if (given(b.threads))
        p.threads = f.threads;
    if (given(b.bits))
        p.config.quant_bits = parse_bits(f.bits);
    if (given(b.elements)) {
        p.config.n_total_elements = f.elements;
        p.config.element_split.clear();
    }
    if (given(b.schemes))
        p.schemes = split_commas(f.schemes);
    if (given(b.start))
        p.start = f.start;
    if (given(b.stop))
        p.stop = f.stop;
    if (given(b.step))
        p.step = f.step;
    if (given(b.grid))
        p.grid_points = f.grid;
    if (given(b.sweep)) {
        const auto& names = sweep_variable_names();
        const auto it = names.find(f.sweep);
        if (it == names.end() || it->second == SweepVariable::RicianDelta)
            throw ValidationError("--sweep expects n_elements, pathloss_gap_db or power_dbm");
        p.variable = it->second;
    }
    if (given(b.k_list)) {
        p.k_list.clear();
        for (const auto& s : split_commas(f.k_list))
            p.k_list.push_back(static_cast<int>(parse_number(s, "--k-list")));
    }
    if (given(b.bits_list)) {
        p.bits_list.clear();
        for (const auto& s : split_commas(f.bits_list))
            p.bits_list.push_back(parse_bits(s));
    }
    if (given(b.power_list)) {
        p.power_dbm_list.clear();
        for (const auto& s : split_commas(f.power_list))
            p.power_dbm_list.push_back(parse_number(s, "--power-list"));
    }
    return p;
}

void run(const irslab::RunPlan& p, std::ostream& os) {
    using irslab::Command;
    switch (p.command) {
    case Command::ThresholdMap:
        irslab::run_threshold_map(p, os);
        break;
    case Command::Region:
        irslab::run_region(p, os);
        break;
    case Command::AllocMinrate:
    case Command::AllocSumrate:
        irslab::write_allocation_report(p, std::cerr);
        irslab::run_sweep(p, os);
        break;
    default:
        irslab::run_sweep(p, os);
        break;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"irslab: capacity and allocation experiments for distributed and centralized IRS deployments"};
    app.require_subcommand(1);
    Flags flags;
    std::vector<std::pair<CLI::App*, Bound>> subs;
    std::vector<irslab::Command> cmds;
    for (const auto& [name, cmd] : irslab::command_names()) {
        CLI::App* sub = app.add_subcommand(name, "run the " + name + " experiment");
        subs.emplace_back(sub, add_options(*sub, flags, cmd));
        cmds.push_back(cmd);
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        for (std::size_t i = 0; i < subs.size(); ++i) {
            if (!subs[i].first->parsed())
                continue;
            const irslab::RunPlan plan = build_plan(cmds[i], flags, subs[i].second);
            std::ostringstream buffer;
            run(plan, buffer);
            if (flags.out.empty()) {
                std::cout << buffer.str();
            } else {
                std::ofstream file(flags.out, std::ios::binary);
                if (!file)
                    throw irslab::Error("cannot open output file '" + flags.out + "'");
                file << buffer.str();
                if (!file)
                    throw irslab::Error("failed writing '" + flags.out + "'");
            }
        }
    } catch (const irslab::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const irslab::InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return 3;
    } catch (const irslab::GuardExceededError& e) {
        std::cerr << "guard exceeded: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

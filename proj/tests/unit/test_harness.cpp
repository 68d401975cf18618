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

#include <catch_amalgamated.hpp>

#include <cmath>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "irslab/harness.hpp"

using namespace irslab;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinRel;

namespace {

struct Row {
    double x = 0.0;
    std::string scheme;
    double objective = 0.0;
    std::vector<std::string> cells;
};

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ','))
        out.push_back(cell);
    return out;
}

// Data rows of a sweep CSV, skipping comments and the header.
std::vector<Row> sweep_rows(const std::string& csv) {
    std::istringstream in(csv);
    std::string line;
    std::vector<Row> rows;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        if (header) {
            header = false;
            continue;
        }
        Row r;
        r.cells = split(line);
        r.x = std::stod(r.cells.at(0));
        r.scheme = r.cells.at(1);
        r.objective = std::stod(r.cells.at(2));
        rows.push_back(r);
    }
    return rows;
}

std::map<double, double> series(const std::vector<Row>& rows, const std::string& scheme) {
    std::map<double, double> out;
    for (const auto& r : rows)
        if (r.scheme == scheme)
            out[r.x] = r.objective;
    return out;
}

std::string run(const RunPlan& p) {
    std::ostringstream os;
    if (p.command == Command::ThresholdMap)
        run_threshold_map(p, os);
    else if (p.command == Command::Region)
        run_region(p, os);
    else
        run_sweep(p, os);
    return os.str();
}

RunPlan preset(Command c, const std::string& name) {
    auto p = make_plan(c);
    apply_preset(p, name);
    return p;
}

} // namespace

TEST_CASE("scheme ids are checked", "[harness]") {
    auto p = make_plan(Command::SweepPower);
    p.schemes = {"dist-opt", "nope"};
    std::ostringstream os;
    CHECK_THROWS_WITH(run_sweep(p, os), ContainsSubstring("dist-opt, cent-opt, dist-tdma"));
    CHECK(os.str().empty());
    p.schemes.clear();
    CHECK_THROWS_AS(run_sweep(p, os), ValidationError);
    CHECK(default_schemes(Command::AllocMinrate) == std::vector<std::string>{"dist-o", "dist-eq", "cent"});
}

TEST_CASE("presets belong to one subcommand", "[harness]") {
    auto p = make_plan(Command::SweepPower);
    CHECK_THROWS_AS(apply_preset(p, "fig3"), ValidationError);
    CHECK_THROWS_AS(apply_preset(p, "fig10"), ValidationError);
    apply_preset(p, "fig2");
    CHECK(sweep_values(p).size() == 16);
    CHECK(p.config.m_antennas == 5);
    CHECK(p.config.k_clusters == 4);
    CHECK(p.config.quant_bits.is_continuous());
    CHECK_THAT(p.config.p_max, WithinRel(1.0, 1e-12));
    CHECK_THAT(p.config.noise_power, WithinRel(1e-12, 1e-12));
    CHECK_THAT(concatenated_gain(p.config, 0, 0), WithinRel(1e-14, 1e-12));

    const auto f5 = preset(Command::AllocMinrate, "fig5");
    CHECK(f5.config.k_clusters == 2);
    CHECK_THAT(concatenated_gain(f5.config, 1, 0), WithinRel(1e-15, 1e-12));
    CHECK(preset(Command::SweepRician, "fig9").config.k_clusters == 2);
}

TEST_CASE("sweep range validation", "[harness]") {
    auto p = make_plan(Command::SweepPower);
    CHECK(sweep_values(p) == std::vector<double>{30.0});
    p.start = 10.0;
    CHECK_THROWS_AS(sweep_values(p), ValidationError);
    p.stop = 5.0;
    p.step = 1.0;
    CHECK_THROWS_AS(sweep_values(p), ValidationError);
    p.stop = 12.0;
    p.step = 0.0;
    CHECK_THROWS_AS(sweep_values(p), ValidationError);
    p.step = 0.5;
    CHECK(sweep_values(p) == std::vector<double>{10.0, 10.5, 11.0, 11.5, 12.0});
    CHECK_THROWS_AS(config_at(p.config, SweepVariable::NElements, 12.5), ValidationError);
}

TEST_CASE("single-point sweep output", "[harness]") {
    const auto p = make_plan(Command::SweepPower);
    const std::string csv = run(p);
    CHECK_THAT(csv, ContainsSubstring("# master_seed = 1"));
    CHECK_THAT(csv, ContainsSubstring("# trials = 10000"));
    CHECK_THAT(csv, ContainsSubstring("[system]"));
    CHECK_THAT(csv, ContainsSubstring("[angles]"));
    CHECK_THAT(csv, ContainsSubstring("swept_value,scheme,sum_rate,rate_1,rate_2,rate_3,rate_4,seed\n"));
    const auto rows = sweep_rows(csv);
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].scheme == "dist-opt");
    CHECK_THAT(rows[0].objective, WithinRel(4.0 * std::log2(32.25), 1e-9));
    CHECK_THAT(rows[1].objective, WithinRel(std::log2(2001.0), 1e-9));
    CHECK(rows[0].cells.size() == 8);
    CHECK(rows[0].cells.back() == "1");
}

TEST_CASE("power sweep: distributed slope is steeper", "[harness]") {
    const auto rows = sweep_rows(run(preset(Command::SweepPower, "fig2")));
    const auto d = series(rows, "dist-opt");
    const auto c = series(rows, "cent-opt");
    const auto t = series(rows, "dist-tdma");
    REQUIRE(d.size() == 16);
    CHECK(d.at(40.0) - d.at(36.0) > c.at(40.0) - c.at(36.0));
    CHECK(d.at(40.0) > c.at(40.0));
    for (const auto& [x, v] : t)
        CHECK(v <= c.at(x));
}

TEST_CASE("element sweep: distributed overtakes centralized", "[harness]") {
    const auto rows = sweep_rows(run(preset(Command::SweepElements, "fig3")));
    const auto d = series(rows, "dist-opt");
    const auto c = series(rows, "cent-opt");
    CHECK(d.begin()->second < c.begin()->second);
    CHECK(d.rbegin()->second > c.rbegin()->second);
    int changes = 0;
    bool ahead = false;
    for (const auto& [x, v] : d) {
        const bool now = v > c.at(x);
        changes += now != ahead;
        ahead = now;
    }
    CHECK(changes == 1);
}

TEST_CASE("threshold map trends", "[harness]") {
    const std::string csv = run(preset(Command::ThresholdMap, "fig4"));
    std::istringstream in(csv);
    std::string line;
    std::map<std::tuple<int, std::string, double>, double> nth;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        if (header) {
            CHECK(line == "k,bits,p_max_dbm,n_th,ceil_n_th,crossover_n");
            header = false;
            continue;
        }
        const auto c = split(line);
        nth[{std::stoi(c[0]), c[1], std::stod(c[2])}] = std::stod(c[3]);
        CHECK(std::stod(c[4]) == std::ceil(std::stod(c[3])));
        CHECK(std::stod(c[5]) <= std::stod(c[3]));
    }
    REQUIRE(nth.size() == 48);
    const std::vector<std::string> bits{"1", "2", "3", "continuous"};
    for (int k = 2; k <= 5; ++k) {
        for (double p : {20.0, 30.0, 40.0})
            for (std::size_t b = 1; b < bits.size(); ++b)
                CHECK(nth.at({k, bits[b], p}) < nth.at({k, bits[b - 1], p}));
        for (const auto& b : bits) {
            CHECK(nth.at({k, b, 30.0}) < nth.at({k, b, 20.0}));
            CHECK(nth.at({k, b, 40.0}) < nth.at({k, b, 30.0}));
            if (k > 2)
                CHECK(nth.at({k, b, 30.0}) > nth.at({k - 1, b, 30.0}));
        }
    }
    auto p = preset(Command::ThresholdMap, "fig4");
    p.k_list = {1, 2, 9};
    const std::string notes = run(p);
    CHECK_THAT(notes, ContainsSubstring("# note: K=1 skipped"));
    CHECK_THAT(notes, ContainsSubstring("# note: K=9 skipped"));
}

TEST_CASE("min-rate gap sweep", "[harness]") {
    const auto rows = sweep_rows(run(preset(Command::AllocMinrate, "fig6")));
    const auto o = series(rows, "dist-o");
    const auto eq = series(rows, "dist-eq");
    REQUIRE(o.size() == 11);
    const double drop_o = o.at(0.0) - o.at(20.0);
    const double drop_eq = eq.at(0.0) - eq.at(20.0);
    CHECK(drop_eq > drop_o);
    double advantage = -1.0;
    for (const auto& [x, v] : o) {
        CHECK(v >= eq.at(x) - 1e-12);
        CHECK(v - eq.at(x) > advantage);
        advantage = v - eq.at(x);
    }
}

TEST_CASE("min-rate element sweep tracks the exhaustive optimum", "[harness]") {
    auto p = preset(Command::AllocMinrate, "fig5");
    p.schemes = {"dist-o", "dist-exh", "cent"};
    const auto rows = sweep_rows(run(p));
    const auto o = series(rows, "dist-o");
    const auto exh = series(rows, "dist-exh");
    for (const auto& [x, v] : o) {
        CHECK(v <= exh.at(x) + 1e-12);
        CHECK(v >= 0.999 * exh.at(x));
    }
}

TEST_CASE("sum-rate gap sweep", "[harness]") {
    for (int n : {200, 600}) {
        auto p = preset(Command::AllocSumrate, "fig8");
        p.config.n_total_elements = n;
        const auto rows = sweep_rows(run(p));
        const auto o = series(rows, "dist-o");
        const auto eq = series(rows, "dist-eq");
        for (const auto& [x, v] : o) {
            INFO("N = " << n << ", gap " << x << " dB: " << eq.at(x) << " vs " << v);
            CHECK(eq.at(x) <= v + 1e-12);
            if (x <= 12.0 || (n == 600 && x <= 16.0))
                CHECK(eq.at(x) >= 0.99 * v);
        }
        if (n == 200)
            CHECK(eq.at(20.0) < 0.99 * o.at(20.0));
    }
}

TEST_CASE("Rician sweep: closed form tracks Monte-Carlo", "[harness][mc]") {
    auto p = preset(Command::SweepRician, "fig9");
    p.trials = 2000;
    const auto rows = sweep_rows(run(p));
    const auto closed = series(rows, "dist-closed");
    const auto mc = series(rows, "dist-mc");
    const auto cent = series(rows, "cent-mc");
    REQUIRE(closed.size() == 10);
    for (const auto& [x, v] : closed)
        CHECK_THAT(v, WithinRel(mc.at(x), 0.05));
    CHECK(mc.at(10.0) > mc.at(1.0));
    CHECK(cent.at(10.0) > cent.at(1.0));
}

TEST_CASE("runs are byte-identical across repeats and thread counts", "[harness][property]") {
    auto p = preset(Command::SweepRician, "fig9");
    p.trials = 300;
    p.stop = 3.0;
    p.threads = 1;
    const std::string a = run(p);
    const std::string b = run(p);
    p.threads = 4;
    const std::string c = run(p);
    CHECK(a == b);
    CHECK(a == c);
    p.config.seed = 2;
    CHECK(run(p) != a);
}

TEST_CASE("region dump", "[harness]") {
    auto p = make_plan(Command::Region);
    p.config = with_clusters(p.config, 2);
    p.grid_points = 5;
    const std::string csv = run(p);
    CHECK_THAT(csv, ContainsSubstring("architecture,point,share_1,share_2,rate_1,rate_2,sum_rate\n"));
    CHECK_THAT(csv, ContainsSubstring("distributed,4,"));
    CHECK_THAT(csv, ContainsSubstring("centralized,4,"));
}

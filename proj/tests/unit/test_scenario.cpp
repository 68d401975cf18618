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

#include <sstream>
#include <string>

#include "irslab/harness.hpp"
#include "irslab/scenario.hpp"

using namespace irslab;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinRel;

namespace {

ScenarioText parse(const std::string& s) {
    std::istringstream in(s);
    return parse_scenario_text(in);
}

void apply(const std::string& s, SystemConfig& cfg, AngleOverrides& angles, ExperimentSettings& ex) {
    apply_scenario(parse(s), cfg, angles, ex);
}

} // namespace

TEST_CASE("scenario with units overlays the baseline", "[scenario]") {
    SystemConfig cfg = default_config();
    AngleOverrides angles;
    ExperimentSettings ex;
    apply(R"(# heterogeneous two-cluster setup
[system]
k_clusters = 2
n_total_elements = 300
quant_bits = 2
p_max = 20 dBm
noise_power = -90 dBm
element_split = 100, 200
seed = 77

[pathloss]
bs_irs_pathloss = -70 dB
irs_user_pathloss = -70 dB, -80 dB

[rician]
rician_bs_irs = 5, los

[angles]
bs_aod = -0.2, 0.2

[experiment]
trials = 500
schemes = dist-o, cent
)",
          cfg, angles, ex);
    CHECK(cfg.k_clusters == 2);
    CHECK(cfg.n_total_elements == 300);
    CHECK(cfg.quant_bits == QuantBits::finite(2));
    CHECK_THAT(cfg.p_max, WithinRel(0.1, 1e-12));
    CHECK(cfg.element_split == std::vector<int>{100, 200});
    CHECK(cfg.seed == 77);
    REQUIRE(cfg.bs_irs_pathloss.distributed.size() == 2);
    CHECK_THAT(cfg.irs_user_pathloss.distributed[1], WithinRel(1e-8, 1e-12));
    CHECK(cfg.rician_bs_irs.distributed[0] == RicianFactor::of(5.0));
    CHECK(cfg.rician_bs_irs.distributed[1].is_los());
    REQUIRE(angles.bs_aod);
    CHECK(*angles.bs_aod == std::vector<double>{-0.2, 0.2});
    CHECK(ex.trials == 500);
    CHECK(*ex.schemes == std::vector<std::string>{"dist-o", "cent"});
    CHECK_NOTHROW(validate(cfg));
}

TEST_CASE("strict parsing rejects unknown keys, sections and bad values", "[scenario]") {
    CHECK_THROWS_WITH(parse("[system]\nm_antenas = 5\n"), ContainsSubstring("unknown key"));
    CHECK_THROWS_WITH(parse("[sys]\n"), ContainsSubstring("unknown section"));
    CHECK_THROWS_WITH(parse("m_antennas = 5\n"), ContainsSubstring("outside any section"));
    CHECK_THROWS_WITH(parse("[system]\nseed = 1\nseed = 2\n"), ContainsSubstring("duplicate"));
    CHECK_THROWS_WITH(parse("[system]\nseed\n"), ContainsSubstring("key = value"));

    SystemConfig cfg = default_config();
    AngleOverrides angles;
    ExperimentSettings ex;
    CHECK_THROWS_AS(apply("[system]\nm_antennas = five\n", cfg, angles, ex), ValidationError);
    CHECK_THROWS_AS(apply("[system]\np_max = 30 dB\n", cfg, angles, ex), ValidationError);
    CHECK_THROWS_AS(apply("[system]\nquant_bits = 0\n", cfg, angles, ex), ValidationError);
    CHECK_THROWS_AS(apply("[pathloss]\nbs_irs_pathloss = 1, 2\n", cfg, angles, ex), ValidationError);
    CHECK_THROWS_AS(apply("[rician]\nrician_bs_irs = -1\n", cfg, angles, ex), ValidationError);
    CHECK_THROWS_AS(apply("[system]\narchitecture = hybrid\n", cfg, angles, ex), ValidationError);
}

TEST_CASE("format_scenario parses back to the same config and angles", "[scenario][property]") {
    SystemConfig cfg = with_clusters(default_config(), 3);
    cfg.l_users_per_cluster = 2;
    cfg = with_clusters(cfg, 3);
    cfg.quant_bits = QuantBits::finite(3);
    cfg.element_split = {50, 60, 90};
    cfg.rician_bs_irs.distributed[1] = RicianFactor::of(0.3);
    cfg.irs_user_pathloss.distributed[4] = 1.2345678901234567e-9;
    cfg.architecture = Architecture::Centralized;
    cfg.seed = 0xFFFFFFFFFFFFFFFFULL;
    const AngleSet angles = draw_angles(cfg, 3);

    SystemConfig back = default_config();
    AngleOverrides over;
    ExperimentSettings ex;
    apply(format_scenario(cfg, &angles), back, over, ex);
    CHECK(config_hash(back) == config_hash(cfg));
    AngleSet a2;
    over.apply(a2);
    CHECK(a2.bs_aod == angles.bs_aod);
    CHECK(a2.irs_aoa == angles.irs_aoa);
    CHECK(a2.irs_user_aod == angles.irs_user_aod);
    CHECK(a2.centralized_aod == angles.centralized_aod);
    CHECK(a2.centralized_irs_aoa == angles.centralized_irs_aoa);
    CHECK(a2.centralized_user_aod == angles.centralized_user_aod);
}

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
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "irslab/config.hpp"
#include "irslab/parallel.hpp"
#include "irslab/random.hpp"
#include "irslab/units.hpp"

using namespace irslab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

TEST_CASE("db_to_linear examples", "[units]") {
    CHECK(db_to_linear(0.0) == 1.0);
    CHECK_THAT(db_to_linear(-140.0), WithinRel(1e-14, 1e-12));
    CHECK_THAT(dbm_to_watts(30.0), WithinRel(1.0, 1e-15));
    CHECK_THAT(dbm_to_watts(-90.0), WithinRel(1e-12, 1e-12));
    CHECK_THROWS_AS(db_to_linear(std::nan("")), ValidationError);
    CHECK_THROWS_AS(db_to_linear(INFINITY), ValidationError);
    CHECK_THROWS_AS(linear_to_db(0.0), ValidationError);
}

TEST_CASE("dB round trip over [-200, 200]", "[units][property]") {
    for (double x = -200.0; x <= 200.0; x += 0.37)
        CHECK_THAT(linear_to_db(db_to_linear(x)), WithinAbs(x, 1e-12));
    CHECK_THAT(watts_to_dbm(dbm_to_watts(17.5)), WithinAbs(17.5, 1e-12));
}

TEST_CASE("Rician sentinel gives exact mixing weights", "[config]") {
    const auto los = RicianFactor::los();
    CHECK(los.is_los());
    CHECK(los.los_power_share() == 1.0);
    CHECK(los.los_amplitude() == 1.0);
    CHECK(los.nlos_amplitude() == 0.0);
    const auto zero = RicianFactor::of(0.0);
    CHECK(zero.los_power_share() == 0.0);
    CHECK(zero.nlos_amplitude() == 1.0);
    CHECK_THAT(RicianFactor::of(5.0).los_power_share(), WithinRel(5.0 / 6.0, 1e-15));
    CHECK_THROWS_AS(RicianFactor::of(-1.0), ValidationError);
    CHECK_THROWS_AS(QuantBits::finite(0), ValidationError);
}

TEST_CASE("validate_homogeneous examples", "[config]") {
    auto cfg = make_homogeneous_config(5, 4, 1, 200, 1.0, 1e-12, 1e-14);
    CHECK(validate_homogeneous(cfg));

    auto two = make_homogeneous_config(5, 2, 1, 200, 1.0, 1e-12, 1e-14);
    two.irs_user_pathloss.distributed[1] *= 0.1;
    CHECK_FALSE(validate_homogeneous(two));

    auto single = make_homogeneous_config(5, 1, 1, 200, 1.0, 1e-12, 1e-14);
    single.bs_irs_pathloss.distributed[0] = 3.0;
    single.irs_user_pathloss.distributed[0] = 7.0;
    single.bs_irs_pathloss.centralized = 21.0;
    single.irs_user_pathloss.centralized[0] = 1.0;
    CHECK(validate_homogeneous(single));
}

TEST_CASE("validate_homogeneous is invariant under cluster permutation", "[config][property]") {
    std::mt19937_64 gen(7);
    std::uniform_real_distribution<double> u(0.5, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        auto cfg = make_homogeneous_config(5, 4, 1, 200, 1.0, 1e-12, 1e-14);
        if (trial % 2 == 0)
            cfg.irs_user_pathloss.distributed[static_cast<std::size_t>(trial % 4)] *= u(gen);
        const bool before = validate_homogeneous(cfg);
        std::vector<int> perm{0, 1, 2, 3};
        std::shuffle(perm.begin(), perm.end(), gen);
        auto shuffled = cfg;
        for (std::size_t i = 0; i < 4; ++i) {
            shuffled.bs_irs_pathloss.distributed[i] = cfg.bs_irs_pathloss.distributed[static_cast<std::size_t>(perm[i])];
            shuffled.irs_user_pathloss.distributed[i] = cfg.irs_user_pathloss.distributed[static_cast<std::size_t>(perm[i])];
        }
        CHECK(validate_homogeneous(shuffled) == before);
    }
}

TEST_CASE("validate rejects inconsistent configs", "[config]") {
    auto cfg = make_homogeneous_config(5, 2, 1, 200, 1.0, 1e-12, 1e-14);
    CHECK_NOTHROW(validate(cfg));
    auto bad = cfg;
    bad.element_split = {100, 99};
    CHECK_THROWS_AS(validate(bad), ValidationError);
    bad = cfg;
    bad.element_split = {150, 50};
    CHECK_NOTHROW(validate(bad));
    bad = cfg;
    bad.m_antennas = 0;
    CHECK_THROWS_AS(validate(bad), ValidationError);
    bad = cfg;
    bad.p_max = -1.0;
    CHECK_THROWS_AS(validate(bad), ValidationError);
    bad = cfg;
    bad.irs_user_pathloss.distributed.pop_back();
    CHECK_THROWS_AS(validate(bad), ValidationError);
    bad = cfg;
    bad.n_total_elements = 1;
    CHECK_THROWS_AS(validate(bad), ValidationError);
}

TEST_CASE("element counts and UPA factorization", "[config]") {
    auto cfg = make_homogeneous_config(5, 3, 1, 200, 1.0, 1e-12, 1e-14);
    CHECK(element_counts(cfg) == std::vector<int>{67, 67, 66});
    cfg.element_split = {10, 20, 170};
    CHECK(element_counts(cfg) == std::vector<int>{10, 20, 170});

    CHECK(upa_factorization(1) == std::pair{1, 1});
    CHECK(upa_factorization(50) == std::pair{5, 10});
    CHECK(upa_factorization(64) == std::pair{8, 8});
    CHECK(upa_factorization(13) == std::pair{1, 13});
    for (int n = 1; n <= 2000; ++n) {
        const auto [nv, nh] = upa_factorization(n);
        REQUIRE(nv * nh == n);
        REQUIRE(nv <= nh);
        for (int d = nv + 1; d * d <= n; ++d)
            REQUIRE(n % d != 0);
    }
}

TEST_CASE("derive_trial_seed is deterministic and collision free on a sample", "[random]") {
    CHECK(derive_trial_seed(42, 7) == derive_trial_seed(42, 7));
    std::mt19937_64 gen(2024);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 10000; ++i) {
        const std::uint64_t s = gen();
        const auto a = derive_trial_seed(s, 0);
        const auto b = derive_trial_seed(s, 1);
        REQUIRE(a != b);
        seen.insert(a);
        seen.insert(b);
    }
    CHECK(seen.size() == 20000);
}

TEST_CASE("per-trial streams do not depend on the parallel schedule", "[random][parallel]") {
    auto draw = [](std::size_t i) {
        Rng rng(derive_trial_seed(99, i));
        double s = 0.0;
        for (int j = 0; j < 100; ++j)
            s += rng.uniform();
        return s;
    };
    const auto serial = parallel_map(257, 1, draw);
    const auto threaded = parallel_map(257, 4, draw);
    CHECK(serial == threaded);
    CHECK(ordered_mean(serial) == ordered_mean(threaded));
}

TEST_CASE("complex Gaussian has unit variance and zero mean", "[random]") {
    Rng rng(5);
    const int n = 200000;
    double power = 0.0;
    std::complex<double> mean{0.0, 0.0};
    for (int i = 0; i < n; ++i) {
        const auto z = rng.complex_gaussian();
        power += std::norm(z);
        mean += z;
    }
    CHECK_THAT(power / n, WithinAbs(1.0, 0.01));
    CHECK(std::abs(mean / static_cast<double>(n)) < 0.01);
}

TEST_CASE("uniform draws stay in [0, 1)", "[random]") {
    Rng rng(11);
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.uniform();
        REQUIRE(u >= 0.0);
        REQUIRE(u < 1.0);
    }
}

TEST_CASE("config hash separates configurations", "[config]") {
    const auto a = make_homogeneous_config(5, 4, 1, 200, 1.0, 1e-12, 1e-14);
    auto b = a;
    CHECK(config_hash(a) == config_hash(b));
    b.n_total_elements = 201;
    CHECK(config_hash(a) != config_hash(b));
    b = a;
    b.rician_bs_irs.distributed[2] = RicianFactor::of(3.0);
    CHECK(config_hash(a) != config_hash(b));
}

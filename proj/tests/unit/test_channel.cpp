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
#include <complex>
#include <random>
#include <sstream>

#include <Eigen/SVD>

#include "irslab/array_response.hpp"
#include "irslab/channel.hpp"
#include "irslab/config.hpp"

using namespace irslab;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {

// Independent evaluations used as oracles.
cplx steering_entry(double d_over_lambda, double x, int i) {
    return std::exp(cplx{0.0, 2.0 * std::numbers::pi * d_over_lambda * x * i});
}

double dirichlet_magnitude(int m, double delta, double d_over_lambda) {
    const double den = std::sin(std::numbers::pi * d_over_lambda * delta);
    if (std::abs(den) < 1e-15)
        return m;
    return std::abs(std::sin(std::numbers::pi * d_over_lambda * m * delta) / den);
}

} // namespace

TEST_CASE("ula_response examples", "[channel]") {
    const auto ones = ula_response(4, 0.0);
    for (int i = 0; i < 4; ++i)
        CHECK(ones[i] == cplx{1.0, 0.0});
    const auto alt = ula_response(3, 1.0, 0.5);
    CHECK(std::abs(alt[0] - cplx{1.0, 0.0}) < 1e-15);
    CHECK(std::abs(alt[1] - cplx{-1.0, 0.0}) < 1e-15);
    CHECK(std::abs(alt[2] - cplx{1.0, 0.0}) < 1e-15);
    CHECK_THROWS_AS(ula_response(3, 1.5), ValidationError);
    CHECK_THROWS_AS(ula_response(0, 0.5), ValidationError);
}

TEST_CASE("ula_response has squared norm n", "[channel][property]") {
    std::mt19937_64 gen(1);
    std::uniform_int_distribution<int> n_dist(1, 64);
    std::uniform_real_distribution<double> x_dist(-1.0, 1.0);
    for (int t = 0; t < 100; ++t) {
        const int n = n_dist(gen);
        const double x = x_dist(gen);
        CHECK_THAT(ula_response(n, x).squaredNorm(), WithinAbs(n, 1e-12 * n));
    }
}

TEST_CASE("upa_response matches a double-loop construction", "[channel][property]") {
    const auto deg = upa_response(1, 6, 0.3, -0.4);
    const auto line = ula_response(6, -0.4);
    CHECK((deg - line).norm() == 0.0);
    const auto flat = upa_response(2, 2, 0.0, 0.0);
    CHECK((flat - ComplexVector::Ones(4)).norm() == 0.0);

    std::mt19937_64 gen(2);
    std::uniform_int_distribution<int> n_dist(1, 8);
    std::uniform_real_distribution<double> x_dist(-1.0, 1.0);
    for (int t = 0; t < 100; ++t) {
        const int nv = n_dist(gen);
        const int nh = n_dist(gen);
        const double x = x_dist(gen);
        const double y = x_dist(gen);
        const auto a = upa_response(nv, nh, x, y);
        REQUIRE(a.size() == nv * nh);
        for (int i = 0; i < nv; ++i)
            for (int j = 0; j < nh; ++j)
                REQUIRE(std::abs(a[i * nh + j] - steering_entry(0.5, x, i) * steering_entry(0.5, y, j)) < 1e-12);
    }
}

TEST_CASE("steering_inner_product against direct sum and Dirichlet kernel", "[channel]") {
    CHECK(std::abs(steering_inner_product(7, 0.3, 0.3) - cplx{7.0, 0.0}) < 1e-12);
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> x_dist(-1.0, 1.0);
    for (int t = 0; t < 200; ++t) {
        const int m = 1 + static_cast<int>(gen() % 16);
        const double x1 = x_dist(gen);
        const double x2 = x_dist(gen);
        cplx direct{0.0, 0.0};
        for (int i = 0; i < m; ++i)
            direct += std::conj(steering_entry(0.5, x1, i)) * steering_entry(0.5, x2, i);
        const cplx v = steering_inner_product(m, x1, x2);
        REQUIRE(std::abs(v - direct) < 1e-12);
        REQUIRE(std::abs(std::abs(v) - dirichlet_magnitude(m, x1 - x2, 0.5)) < 1e-9);
    }
}

TEST_CASE("ideal AoD sets null inter-cluster steering products", "[channel]") {
    const auto set = ideal_aod_set(5, 4, 0.5);
    REQUIRE(set.size() == 4);
    for (std::size_t i = 1; i < set.size(); ++i)
        CHECK_THAT(set[i] - set[i - 1], WithinAbs(0.4, 1e-12));
    CHECK_THAT(set.front() + set.back(), WithinAbs(0.0, 1e-12));
    CHECK(ideal_aod_set(2, 1, 0.5).size() == 1);

    for (int m = 1; m <= 12; ++m) {
        for (int k = 1; k <= m; ++k) {
            const auto s = ideal_aod_set(m, k, 0.5);
            for (int i = 0; i < k; ++i) {
                REQUIRE(std::abs(s[static_cast<std::size_t>(i)]) <= 1.0);
                for (int j = i + 1; j < k; ++j)
                    REQUIRE(std::abs(steering_inner_product(m, s[static_cast<std::size_t>(i)],
                                                            s[static_cast<std::size_t>(j)])) < 1e-9);
            }
        }
    }
    CHECK_THROWS_AS(ideal_aod_set(3, 4, 0.5), ValidationError);
    CHECK_THROWS_AS(ideal_aod_set(5, 4, 0.1), InfeasibleError);
}

TEST_CASE("pure LoS realization is rank one with the predicted singular value", "[channel]") {
    auto cfg = make_homogeneous_config(5, 3, 2, 150, 1.0, 1e-12, 1e-14);
    const auto angles = draw_angles(cfg, 4);
    const auto real = synth_channels(cfg, angles, 12345);
    const auto counts = element_counts(cfg);
    const double rho_g = std::sqrt(cfg.bs_irs_pathloss.distributed[0]);
    for (int k = 0; k < cfg.k_clusters; ++k) {
        const auto& g = real.bs_irs[static_cast<std::size_t>(k)];
        REQUIRE(g.rows() == counts[static_cast<std::size_t>(k)]);
        REQUIRE(g.cols() == cfg.m_antennas);
        Eigen::JacobiSVD<ComplexMatrix> svd(g);
        const auto sv = svd.singularValues();
        CHECK_THAT(sv[0], WithinRel(std::sqrt(5.0 * counts[static_cast<std::size_t>(k)]) * rho_g, 1e-12));
        for (Eigen::Index i = 1; i < sv.size(); ++i)
            CHECK(sv[i] < 1e-12 * sv[0]);
        const ComplexMatrix outer =
            surface_response(counts[static_cast<std::size_t>(k)], angles.irs_aoa[static_cast<std::size_t>(k)], 0.5) *
            ula_response(5, angles.bs_aod[static_cast<std::size_t>(k)]).adjoint();
        const ComplexMatrix los = rho_g * outer;
        CHECK((g - los).norm() == 0.0);
        REQUIRE(real.irs_user[static_cast<std::size_t>(k)].size() == 2);
    }
}

TEST_CASE("Rayleigh links have unit normalized second moment", "[channel][montecarlo]") {
    auto cfg = make_homogeneous_config(5, 1, 1, 100, 1.0, 1e-12, 1e-14);
    cfg.rician_bs_irs.distributed[0] = RicianFactor::of(0.0);
    const auto angles = draw_angles(cfg, 5);
    const double rho2 = cfg.bs_irs_pathloss.distributed[0];
    double sum = 0.0;
    long long count = 0;
    for (std::uint64_t t = 0; t < 200; ++t) {
        const auto real = synth_channels(cfg, angles, derive_trial_seed(9, t));
        sum += real.bs_irs[0].squaredNorm() / rho2;
        count += real.bs_irs[0].size();
    }
    REQUIRE(count == 100000);
    const double mean = sum / static_cast<double>(count);
    CHECK(mean >= 0.99);
    CHECK(mean <= 1.01);
}

TEST_CASE("synth_channels is deterministic and tags its inputs", "[channel]") {
    auto cfg = make_homogeneous_config(4, 2, 1, 60, 1.0, 1e-12, 1e-14);
    cfg.rician_bs_irs.distributed = {RicianFactor::of(2.0), RicianFactor::of(2.0)};
    const auto angles = draw_angles(cfg, 1);
    const auto a = synth_channels(cfg, angles, 77);
    const auto b = synth_channels(cfg, angles, 77);
    const auto c = synth_channels(cfg, angles, 78);
    CHECK(a.bs_irs[1] == b.bs_irs[1]);
    CHECK(a.irs_user[0][0] == b.irs_user[0][0]);
    CHECK(a.bs_irs[1] != c.bs_irs[1]);
    CHECK(a.seed == 77);
    CHECK(a.config_hash == config_hash(cfg));

    cfg.architecture = Architecture::Centralized;
    const auto cent = synth_channels(cfg, angles, 77);
    REQUIRE(cent.bs_irs.size() == 1);
    CHECK(cent.bs_irs[0].rows() == 60);
    CHECK(cent.irs_user[1][0].size() == 60);
}

TEST_CASE("effective_channel against an explicit triple loop", "[channel]") {
    std::mt19937_64 gen(6);
    std::normal_distribution<double> nd;
    std::uniform_real_distribution<double> ph(0.0, 6.283185307179586);
    for (int t = 0; t < 50; ++t) {
        const int n = 1 + static_cast<int>(gen() % 12);
        const int m = 1 + static_cast<int>(gen() % 6);
        ComplexVector h(n);
        ComplexMatrix g(n, m);
        std::vector<double> theta(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            h[i] = {nd(gen), nd(gen)};
            theta[static_cast<std::size_t>(i)] = ph(gen);
            for (int j = 0; j < m; ++j)
                g(i, j) = {nd(gen), nd(gen)};
        }
        const auto eff = effective_channel(h, PhasePattern::continuous(theta), g);
        for (int j = 0; j < m; ++j) {
            cplx row{0.0, 0.0};
            for (int i = 0; i < n; ++i)
                row += std::conj(h[i]) * std::exp(cplx{0.0, theta[static_cast<std::size_t>(i)]}) * g(i, j);
            REQUIRE(std::abs(std::conj(eff[j]) - row) < 1e-12 * (1.0 + std::abs(row)));
        }
        const auto plain = effective_channel(h, PhasePattern::zeros(static_cast<std::size_t>(n)), g);
        const Eigen::RowVectorXcd direct = h.adjoint() * g;
        REQUIRE((plain.adjoint() - direct).norm() < 1e-12 * (1.0 + direct.norm()));
    }

    ComplexVector h1(1);
    h1[0] = {2.0, 1.0};
    ComplexMatrix g1(1, 1);
    g1(0, 0) = {0.5, -3.0};
    const auto e1 = effective_channel(h1, PhasePattern::continuous({0.7}), g1);
    CHECK(std::abs(std::conj(e1[0]) - std::conj(h1[0]) * std::polar(1.0, 0.7) * g1(0, 0)) < 1e-14);
    CHECK_THROWS_AS(effective_channel(h1, PhasePattern::zeros(2), g1), ValidationError);
}

TEST_CASE("matrix text dump round trips exactly", "[channel]") {
    auto cfg = make_homogeneous_config(3, 2, 1, 12, 1.0, 1e-12, 1e-14);
    cfg.rician_bs_irs.distributed = {RicianFactor::of(1.0), RicianFactor::of(1.0)};
    const auto real = synth_channels(cfg, draw_angles(cfg, 2), 8);
    std::stringstream ss;
    write_matrix(ss, real.bs_irs[1]);
    const auto back = read_matrix(ss);
    CHECK(back == real.bs_irs[1]);
    CHECK(parse_complex_cell("1.5-2e-05i") == cplx{1.5, -2e-05});
    CHECK_THROWS_AS(parse_complex_cell("1.5"), ValidationError);
    std::ostringstream dump;
    dump_realization(dump, real);
    CHECK(dump.str().find("# irs_user 1 0") != std::string::npos);
}

TEST_CASE("PhasePattern stores exact grid points", "[channel]") {
    const auto p = PhasePattern::from_indices(QuantBits::finite(2), {0, 1, 2, 3});
    CHECK(p.phases()[2] == std::numbers::pi);
    for (std::size_t i = 0; i < p.size(); ++i)
        CHECK_THAT(std::abs(p.reflection(i)), WithinAbs(1.0, 1e-15));
    CHECK_THROWS_AS(PhasePattern::from_indices(QuantBits::finite(2), {4}), ValidationError);
}

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

#ifndef IRSLAB_CHANNEL_HPP
#define IRSLAB_CHANNEL_HPP

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "irslab/array_response.hpp"
#include "irslab/config.hpp"
#include "irslab/errors.hpp"
#include "irslab/random.hpp"

namespace irslab {

/*!
 * Reflection phases of one surface (the diagonal of Theta).
 *
 * With finite resolution the pattern stores grid indices q_n and the phase is
 * 2 pi q_n / Q, so membership in the grid is exact by construction.
 */
class PhasePattern {
public:
    PhasePattern() : bits_(QuantBits::continuous()) {}

    static PhasePattern from_indices(QuantBits bits, std::vector<int> indices) {
        detail::require(!bits.is_continuous(), "PhasePattern::from_indices needs finite quant_bits");
        for (int q : indices)
            detail::require(q >= 0 && q < bits.levels(), "PhasePattern: grid index out of range");
        PhasePattern p;
        p.bits_ = bits;
        p.phases_.reserve(indices.size());
        for (int q : indices)
            p.phases_.push_back(2.0 * pi * q / bits.levels());
        p.indices_ = std::move(indices);
        return p;
    }

    static PhasePattern continuous(std::vector<double> phases) {
        for (double t : phases)
            detail::require(std::isfinite(t), "PhasePattern: non-finite phase");
        PhasePattern p;
        p.phases_ = std::move(phases);
        return p;
    }

    static PhasePattern zeros(std::size_t n) { return continuous(std::vector<double>(n, 0.0)); }

    std::size_t size() const { return phases_.size(); }
    QuantBits bits() const { return bits_; }
    const std::vector<double>& phases() const { return phases_; }
    /// Grid indices; empty for a continuous pattern.
    const std::vector<int>& indices() const { return indices_; }
    cplx reflection(std::size_t n) const { return std::polar(1.0, phases_[n]); }

private:
    QuantBits bits_;
    std::vector<double> phases_;
    std::vector<int> indices_;
};

/*!
 * One draw of every channel of a scenario.
 *
 * bs_irs holds one N_k x M matrix per cluster (distributed) or a single N x M
 * matrix (centralized). irs_user[k][l] holds the column h_r whose conjugate
 * transpose is the IRS->user row of user (k, l).
 */
struct ChannelRealization {
    Architecture architecture = Architecture::Distributed;
    std::vector<ComplexMatrix> bs_irs;
    std::vector<std::vector<ComplexVector>> irs_user;
    std::uint64_t seed = 0;
    std::uint64_t config_hash = 0;

    const ComplexMatrix& bs_irs_for(int k) const {
        return architecture == Architecture::Distributed ? bs_irs[static_cast<std::size_t>(k)] : bs_irs.front();
    }
};

/// Checks that `angles` covers the configured architecture with cosines in [-1, 1].
inline void validate_angles(const SystemConfig& cfg, const AngleSet& angles) {
    using detail::require;
    auto in_range = [](double v) { return std::abs(v) <= 1.0; };
    auto pair_ok = [&](const DirectionPair& p) { return in_range(p.x) && in_range(p.y); };
    const auto k = static_cast<std::size_t>(cfg.k_clusters);
    const auto users = cfg.user_count();
    if (cfg.architecture == Architecture::Distributed) {
        require(angles.bs_aod.size() == k, "angles: bs_aod must list k_clusters entries");
        require(angles.irs_aoa.size() == k, "angles: irs_aoa must list k_clusters entries");
        require(angles.irs_user_aod.size() == users, "angles: irs_user_aod must list k_clusters * l_users entries");
        require(std::ranges::all_of(angles.bs_aod, in_range) && std::ranges::all_of(angles.irs_aoa, pair_ok) &&
                    std::ranges::all_of(angles.irs_user_aod, pair_ok),
                "angles: directional cosines must lie in [-1, 1]");
    } else {
        require(angles.centralized_user_aod.size() == users,
                "angles: centralized_user_aod must list k_clusters * l_users entries");
        require(in_range(angles.centralized_aod) && pair_ok(angles.centralized_irs_aoa) &&
                    std::ranges::all_of(angles.centralized_user_aod, pair_ok),
                "angles: directional cosines must lie in [-1, 1]");
    }
}

/*!
 * Fills every angle of both layouts. BS departure cosines come from the ideal
 * set when it exists; everything else is uniform on [-1, 1].
 */
inline AngleSet draw_angles(const SystemConfig& cfg, std::uint64_t seed) {
    Rng rng(derive_trial_seed(seed, 0xA7C1E5ULL));
    AngleSet a;
    const auto k = static_cast<std::size_t>(cfg.k_clusters);
    const auto users = cfg.user_count();
    auto draw_pair = [&rng] {
        const double x = rng.uniform(-1.0, 1.0);
        return DirectionPair{x, rng.uniform(-1.0, 1.0)};
    };

    std::vector<double> random_aod(k);
    for (auto& x : random_aod)
        x = rng.uniform(-1.0, 1.0);
    try {
        a.bs_aod = ideal_aod_set(cfg.m_antennas, cfg.k_clusters, cfg.d_over_lambda);
    } catch (const Error&) {
        a.bs_aod = random_aod;
    }
    for (std::size_t i = 0; i < k; ++i)
        a.irs_aoa.push_back(draw_pair());
    for (std::size_t i = 0; i < users; ++i)
        a.irs_user_aod.push_back(draw_pair());
    a.centralized_aod = rng.uniform(-1.0, 1.0);
    a.centralized_irs_aoa = draw_pair();
    for (std::size_t i = 0; i < users; ++i)
        a.centralized_user_aod.push_back(draw_pair());
    return a;
}

/// LoS arrival response a_S at a surface of n elements.
inline ComplexVector surface_response(int n, const DirectionPair& dir, double d_over_lambda) {
    const auto [nv, nh] = upa_factorization(n);
    return upa_response(nv, nh, dir.x, dir.y, d_over_lambda);
}

namespace detail {

inline ComplexMatrix draw_bs_irs(Rng& rng, int n, int m, double gain, const RicianFactor& kappa,
                                 const ComplexVector& a_s, const ComplexVector& a_m) {
    ComplexMatrix nlos(n, m);
    for (int c = 0; c < m; ++c)
        for (int r = 0; r < n; ++r)
            nlos(r, c) = rng.complex_gaussian();
    const ComplexMatrix los = a_s * a_m.adjoint();
    const double rho = std::sqrt(gain);
    if (kappa.is_los())
        return rho * los;
    return rho * (kappa.los_amplitude() * los + kappa.nlos_amplitude() * nlos);
}

inline ComplexVector draw_irs_user(Rng& rng, double gain, const RicianFactor& kappa, const ComplexVector& a_user) {
    ComplexVector nlos(a_user.size());
    for (Eigen::Index i = 0; i < nlos.size(); ++i)
        nlos[i] = rng.complex_gaussian();
    const double rho = std::sqrt(gain);
    if (kappa.is_los())
        return rho * a_user;
    return rho * (kappa.los_amplitude() * a_user + kappa.nlos_amplitude() * nlos);
}

} // namespace detail

/*!
 * Draws one realization for cfg.architecture.
 *
 * Draw order: for each surface the BS->IRS NLoS matrix (column-major), then
 * the NLoS vectors of its users in index order. The NLoS samples are drawn
 * even for LoS links so that realizations under different Rician factors
 * share the same underlying samples.
 */
inline ChannelRealization synth_channels(const SystemConfig& cfg, const AngleSet& angles, std::uint64_t seed) {
    validate(cfg);
    validate_angles(cfg, angles);
    Rng rng(seed);
    ChannelRealization out;
    out.architecture = cfg.architecture;
    out.seed = seed;
    out.config_hash = config_hash(cfg);
    const int m = cfg.m_antennas;
    const double dl = cfg.d_over_lambda;
    const int users_per = cfg.l_users_per_cluster;

    if (cfg.architecture == Architecture::Distributed) {
        const auto counts = element_counts(cfg);
        for (int k = 0; k < cfg.k_clusters; ++k) {
            const auto ks = static_cast<std::size_t>(k);
            const int nk = counts[ks];
            const ComplexVector a_s = surface_response(nk, angles.irs_aoa[ks], dl);
            const ComplexVector a_m = ula_response(m, angles.bs_aod[ks], dl);
            out.bs_irs.push_back(detail::draw_bs_irs(rng, nk, m, cfg.bs_irs_pathloss.distributed[ks],
                                                     cfg.rician_bs_irs.distributed[ks], a_s, a_m));
            std::vector<ComplexVector> rows;
            for (int l = 0; l < users_per; ++l) {
                const auto u = cfg.user_index(k, l);
                rows.push_back(detail::draw_irs_user(rng, cfg.irs_user_pathloss.distributed[u],
                                                     cfg.rician_irs_user.distributed[u],
                                                     surface_response(nk, angles.irs_user_aod[u], dl)));
            }
            out.irs_user.push_back(std::move(rows));
        }
    } else {
        const int n = cfg.n_total_elements;
        const ComplexVector a_s = surface_response(n, angles.centralized_irs_aoa, dl);
        const ComplexVector a_m = ula_response(m, angles.centralized_aod, dl);
        out.bs_irs.push_back(detail::draw_bs_irs(rng, n, m, cfg.bs_irs_pathloss.centralized,
                                                 cfg.rician_bs_irs.centralized, a_s, a_m));
        for (int k = 0; k < cfg.k_clusters; ++k) {
            std::vector<ComplexVector> rows;
            for (int l = 0; l < users_per; ++l) {
                const auto u = cfg.user_index(k, l);
                rows.push_back(detail::draw_irs_user(rng, cfg.irs_user_pathloss.centralized[u],
                                                     cfg.rician_irs_user.centralized[u],
                                                     surface_response(n, angles.centralized_user_aod[u], dl)));
            }
            out.irs_user.push_back(std::move(rows));
        }
    }
    return out;
}

/*!
 * Effective BS->user channel. The row h_r^H diag(e^{j theta}) G is returned
 * as its conjugate-transposed column h, so the received signal for a beam w
 * is h.adjoint() * w.
 */
inline ComplexVector effective_channel(const ComplexVector& h_r, const PhasePattern& theta, const ComplexMatrix& g) {
    if (h_r.size() != static_cast<Eigen::Index>(theta.size()) || h_r.size() != g.rows())
        throw ValidationError("effective_channel: dimension mismatch (h_r " + std::to_string(h_r.size()) +
                              ", theta " + std::to_string(theta.size()) + ", G rows " + std::to_string(g.rows()) +
                              ")");
    ComplexVector weighted(h_r.size());
    for (Eigen::Index n = 0; n < h_r.size(); ++n)
        weighted[n] = std::conj(h_r[n]) * theta.reflection(static_cast<std::size_t>(n));
    const Eigen::RowVectorXcd row = weighted.transpose() * g;
    return row.adjoint();
}

// ---- text dump -----------------------------------------------------------

/// Writes "rows cols" then one line per row of "a+bi" cells separated by spaces.
inline void write_matrix(std::ostream& os, const ComplexMatrix& mat) {
    os << mat.rows() << ' ' << mat.cols() << '\n';
    char buf[96];
    for (Eigen::Index r = 0; r < mat.rows(); ++r) {
        for (Eigen::Index c = 0; c < mat.cols(); ++c) {
            const cplx v = mat(r, c);
            std::snprintf(buf, sizeof buf, "%.17g%+.17gi", v.real(), v.imag());
            os << (c == 0 ? "" : " ") << buf;
        }
        os << '\n';
    }
}

inline cplx parse_complex_cell(const std::string& cell) {
    const char* begin = cell.c_str();
    char* end = nullptr;
    const double re = std::strtod(begin, &end);
    if (end == begin || (*end != '+' && *end != '-'))
        throw ValidationError("matrix dump: malformed cell '" + cell + "'");
    const char* imag_begin = end;
    const double im = std::strtod(imag_begin, &end);
    if (end == imag_begin || *end != 'i' || end[1] != '\0')
        throw ValidationError("matrix dump: malformed cell '" + cell + "'");
    return {re, im};
}

inline ComplexMatrix read_matrix(std::istream& is) {
    Eigen::Index rows = 0;
    Eigen::Index cols = 0;
    if (!(is >> rows >> cols) || rows < 0 || cols < 0)
        throw ValidationError("matrix dump: missing or bad dimensions");
    ComplexMatrix mat(rows, cols);
    std::string cell;
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) {
            if (!(is >> cell))
                throw ValidationError("matrix dump: truncated matrix");
            mat(r, c) = parse_complex_cell(cell);
        }
    }
    return mat;
}

/// Dumps every matrix of a realization, each preceded by a "# label" line.
inline void dump_realization(std::ostream& os, const ChannelRealization& real) {
    os << "# architecture " << to_string(real.architecture) << " seed " << real.seed << " config_hash "
       << real.config_hash << '\n';
    for (std::size_t k = 0; k < real.bs_irs.size(); ++k) {
        os << "# bs_irs " << k << '\n';
        write_matrix(os, real.bs_irs[k]);
    }
    for (std::size_t k = 0; k < real.irs_user.size(); ++k) {
        for (std::size_t l = 0; l < real.irs_user[k].size(); ++l) {
            os << "# irs_user " << k << ' ' << l << '\n';
            write_matrix(os, real.irs_user[k][l].adjoint());
        }
    }
}

} // namespace irslab

#endif

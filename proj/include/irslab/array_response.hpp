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

#ifndef IRSLAB_ARRAY_RESPONSE_HPP
#define IRSLAB_ARRAY_RESPONSE_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "irslab/errors.hpp"
#include "irslab/units.hpp"

namespace irslab {

using cplx = std::complex<double>;
using ComplexVector = Eigen::VectorXcd;
using ComplexMatrix = Eigen::MatrixXcd;

namespace detail {

inline void require_cosine(double x, const char* what) {
    if (!(std::abs(x) <= 1.0))
        throw ValidationError(std::string(what) + ": directional cosine outside [-1, 1]");
}

} // namespace detail

/// Uniform linear array response, entry i = exp(j 2 pi (d/lambda) x i).
inline ComplexVector ula_response(int n, double x, double d_over_lambda = 0.5) {
    detail::require(n >= 1, "ula_response: n must be >= 1");
    detail::require_cosine(x, "ula_response");
    ComplexVector a(n);
    const double step = 2.0 * pi * d_over_lambda * x;
    for (int i = 0; i < n; ++i)
        a[i] = std::polar(1.0, step * i);
    return a;
}

/// Planar array response as the Kronecker product ula(nv, x) (x) ula(nh, y).
inline ComplexVector upa_response(int nv, int nh, double x, double y, double d_over_lambda = 0.5) {
    const ComplexVector av = ula_response(nv, x, d_over_lambda);
    const ComplexVector ah = ula_response(nh, y, d_over_lambda);
    ComplexVector a(static_cast<Eigen::Index>(nv) * nh);
    for (int i = 0; i < nv; ++i)
        a.segment(static_cast<Eigen::Index>(i) * nh, nh) = av[i] * ah;
    return a;
}

/// a_M(x1)^H a_M(x2).
inline cplx steering_inner_product(int m, double x1, double x2, double d_over_lambda = 0.5) {
    detail::require_cosine(x1, "steering_inner_product");
    detail::require_cosine(x2, "steering_inner_product");
    const double step = 2.0 * pi * d_over_lambda * (x2 - x1);
    cplx s{0.0, 0.0};
    for (int i = 0; i < m; ++i)
        s += std::polar(1.0, step * i);
    return s;
}

/*!
 * BS departure cosines satisfying the ideal deployment condition with
 * adjacent differences 1/(M d/lambda), centered on zero.
 *
 * Throws ValidationError when k > m and InfeasibleError when the set does not
 * fit in [-1, 1].
 */
inline std::vector<double> ideal_aod_set(int m, int k, double d_over_lambda = 0.5) {
    detail::require(m >= 1 && k >= 1, "ideal_aod_set: m and k must be >= 1");
    detail::require(d_over_lambda > 0.0, "ideal_aod_set: d_over_lambda must be > 0");
    if (k > m)
        throw ValidationError("ideal_aod_set: needs k_clusters <= m_antennas (got K=" + std::to_string(k) +
                              ", M=" + std::to_string(m) + ")");
    const double spacing = 1.0 / (m * d_over_lambda);
    const double span = (k - 1) * spacing;
    if (span > 2.0 + 1e-12)
        throw InfeasibleError("ideal_aod_set: spread " + std::to_string(span) + " does not fit in [-1, 1]");
    std::vector<double> out(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
        out[static_cast<std::size_t>(i)] = std::clamp(-0.5 * span + i * spacing, -1.0, 1.0);
    return out;
}

} // namespace irslab

#endif

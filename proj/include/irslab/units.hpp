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

#ifndef IRSLAB_UNITS_HPP
#define IRSLAB_UNITS_HPP

#include <cmath>
#include <numbers>
#include <string>

#include "irslab/errors.hpp"

namespace irslab {

inline constexpr double pi = std::numbers::pi;

inline double db_to_linear(double x_db) {
    if (!std::isfinite(x_db))
        throw ValidationError("db_to_linear: non-finite input " + std::to_string(x_db));
    return std::pow(10.0, x_db / 10.0);
}

inline double linear_to_db(double x) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw ValidationError("linear_to_db: input must be positive and finite");
    return 10.0 * std::log10(x);
}

// dBm is referenced to 1 mW.
inline double dbm_to_watts(double x_dbm) { return db_to_linear(x_dbm - 30.0); }

inline double watts_to_dbm(double watts) { return linear_to_db(watts) + 30.0; }

} // namespace irslab

#endif

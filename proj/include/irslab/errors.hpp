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

#ifndef IRSLAB_ERRORS_HPP
#define IRSLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace irslab {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Bad input: out-of-range values, inconsistent dimensions, unknown keys.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Well-formed input that admits no solution (e.g. no ideal AoD set fits).
class InfeasibleError : public Error {
public:
    using Error::Error;
};

/// An enumeration would exceed its configured search-space guard.
class GuardExceededError : public Error {
public:
    using Error::Error;
};

namespace detail {

inline void require(bool condition, const std::string& message) {
    if (!condition)
        throw ValidationError(message);
}

} // namespace detail

} // namespace irslab

#endif

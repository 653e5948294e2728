// Copyright 2026 The LOCC Estimation Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LOCC_ERRORS_H
#define LOCC_ERRORS_H

#include <cstdint>
#include <stdexcept>
#include <string>

namespace locc {

/// Malformed input: bad preconditions, inconsistent strategies, schema violations.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// A computation would exceed a configured size limit.
struct ResourceError : std::runtime_error {
    ResourceError(const std::string &what, std::uint64_t required, std::uint64_t allowed)
        : std::runtime_error(what + " (required " + std::to_string(required) + ", allowed " +
                             std::to_string(allowed) + ")"),
          required(required),
          allowed(allowed) {
    }
    std::uint64_t required;
    std::uint64_t allowed;
};

/// A numerical procedure is too ill-conditioned to trust its output.
struct ConditioningError : std::runtime_error {
    ConditioningError(const std::string &what, double condition)
        : std::runtime_error(what + " (condition " + std::to_string(condition) + ")"), condition(condition) {
    }
    double condition;
};

}  // namespace locc

#endif

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

#ifndef LOCC_IO_H
#define LOCC_IO_H

#include <nlohmann/json.hpp>
#include <string>
#include <string_view>

#include "locc/asymptotics.h"
#include "locc/estimator.h"
#include "locc/montecarlo.h"
#include "locc/optimizer.h"
#include "locc/strategy.h"

namespace locc {

/// Shortest decimal string that parses back to exactly `x`.
std::string format_number(double x);

/// Strategy document:
///   {"geometry": "full", "N": 2,
///    "nodes": [{"history": "", "direction": [0, 0, 1]},
///              {"history": "0", "direction": [1, 0, 0]}, ...]}
/// One node per history of length 0..N-1, written i_k...i_1.
nlohmann::json strategy_to_json(const StrategyTree &tree);
/// Throws ValidationError naming the offending field. Directions must be
/// unit length within 1e-9 and are renormalized.
StrategyTree strategy_from_json(const nlohmann::json &doc);
/// Parses text; syntax errors report line and column.
StrategyTree parse_strategy(std::string_view text);

nlohmann::json to_json(const FidelityReport &r);
/// Comment header with F, N, method and degree, then one row per branch.
std::string to_csv(const FidelityReport &r);

/// Includes every direction as a vector and as (polar, azimuth).
nlohmann::json to_json(const OptimizationResult &r);
nlohmann::json to_json(const AnsatzOptimum &r);

nlohmann::json to_json(const McResult &r);
std::string trace_csv_header();
std::string to_csv_row(const TraceRow &row);

/// Rows of N, F, c_N (and stderr when present).
std::string to_csv(const CoefficientSeries &s);
nlohmann::json to_json(const CoefficientSeries &s);
nlohmann::json to_json(const CmComparison &c);

}  // namespace locc

#endif

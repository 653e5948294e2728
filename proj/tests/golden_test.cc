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

// Stored optimizer outputs (tests/golden/optimize_n*.json, written by
// `locc optimize --n k --output ...`).

#include <gtest/gtest.h>

#include <fstream>
#include <string>

#include "locc/estimator.h"
#include "locc/io.h"
#include "locc/optimizer.h"

using namespace locc;
using nlohmann::json;

namespace {

json load(int n) {
    std::ifstream f(std::string(LOCC_GOLDEN_DIR) + "/optimize_n" + std::to_string(n) + ".json");
    if (!f) {
        throw std::runtime_error("missing golden file for N = " + std::to_string(n));
    }
    return json::parse(f);
}

class Golden : public ::testing::TestWithParam<int> {};

}  // namespace

TEST_P(Golden, stored_strategy_reproduces_stored_fidelity) {
    const json doc = load(GetParam());
    const StrategyTree t = strategy_from_json(doc["result"]["strategy"]);
    ASSERT_EQ(t.copies(), GetParam());
    EXPECT_NEAR(fidelity_exact_tree(t, GuessRule::optimal()).fidelity, doc["result"]["fidelity"].get<double>(),
                1e-12);
}

TEST_P(Golden, rerun_matches) {
    const json doc = load(GetParam());
    const json &cfg = doc["config"];
    OptimizationConfig oc;
    oc.restarts = cfg["restarts"].get<int>();
    oc.seed = cfg["seed"].get<std::uint64_t>();
    oc.max_iterations = cfg["max-iterations"].get<int>();
    oc.f_tolerance = cfg["tolerance"].get<double>();
    oc.gauge = cfg["gauge"] == "free" ? Gauge::Free : Gauge::FixRoot;
    oc.threads = 2;
    const OptimizationResult r = optimize_tree(parse_geometry(cfg["geometry"].get<std::string>()), GetParam(),
                                               GuessRule::parse(cfg["guess"].get<std::string>()), oc);
    EXPECT_NEAR(r.fidelity, doc["result"]["fidelity"].get<double>(), 1e-9);
}

INSTANTIATE_TEST_SUITE_P(optimize, Golden, ::testing::Range(2, 7),
                         [](const auto &info) { return "n" + std::to_string(info.param); });

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

#include "locc/io.h"

#include <gtest/gtest.h>

#include "locc/builtin.h"
#include "locc/errors.h"
#include "test_util.h"

using namespace locc;
using nlohmann::json;

namespace {

std::string error_of(const std::string &text) {
    try {
        parse_strategy(text);
    } catch (const ValidationError &e) {
        return e.what();
    }
    return "";
}

}  // namespace

TEST(numbers, shortest_round_trip) {
    Xoshiro256 rng(3);
    for (int i = 0; i < 1000; ++i) {
        const double x = (rng.uniform() - 0.5) * std::pow(10.0, static_cast<int>(rng() % 40) - 20);
        EXPECT_EQ(std::stod(format_number(x)), x);
    }
    EXPECT_EQ(format_number(0.5), "0.5");
    EXPECT_EQ(format_number(std::nan("")), "nan");
}

TEST(strategy_json, round_trip_is_lossless) {
    Xoshiro256 rng(4);
    for (Geometry g : {Geometry::Planar, Geometry::Full}) {
        StrategyTree t = locc::testing::random_tree(g, 4, rng);
        StrategyTree back = parse_strategy(strategy_to_json(t).dump());
        EXPECT_EQ(back.geometry(), g);
        ASSERT_EQ(back.copies(), 4);
        for (std::size_t i = 0; i < t.directions().size(); ++i) {
            EXPECT_EQ(back.directions()[i], t.directions()[i]);
        }
    }
}

TEST(strategy_json, schema_layout) {
    json doc = strategy_to_json(optimal_n2_tree());
    EXPECT_EQ(doc["geometry"], "full");
    EXPECT_EQ(doc["N"], 2);
    ASSERT_EQ(doc["nodes"].size(), 3u);
    EXPECT_EQ(doc["nodes"][0]["history"], "");
    EXPECT_EQ(doc["nodes"][2]["history"], "1");
    EXPECT_EQ(doc["nodes"][1]["direction"], json::array({1.0, 0.0, 0.0}));
}

TEST(strategy_json, node_order_does_not_matter) {
    json doc = strategy_to_json(optimal_n3_tree());
    std::reverse(doc["nodes"].begin(), doc["nodes"].end());
    StrategyTree t = strategy_from_json(doc);
    EXPECT_EQ(t.direction(0, 0), optimal_n3_tree().direction(0, 0));
}

TEST(strategy_json, diagnostics) {
    EXPECT_NE(error_of("{\"geometry\": \"full\",\n \"N\": 2,\n \"nodes\": [1,]}").find("line 3"), std::string::npos);
    EXPECT_NE(error_of("{\"N\": 1, \"nodes\": []}").find("'geometry'"), std::string::npos);
    EXPECT_NE(error_of("{\"geometry\": \"cube\", \"N\": 1, \"nodes\": []}").find("'geometry'"), std::string::npos);
    EXPECT_NE(error_of("{\"geometry\": \"full\", \"N\": 1.5, \"nodes\": []}").find("'N'"), std::string::npos);
    EXPECT_NE(error_of("{\"geometry\": \"full\", \"N\": 1, \"nodes\": []}").find("expected 1 entries"),
              std::string::npos);
    const std::string two_nodes =
        R"({"geometry": "full", "N": 2, "nodes": [{"history": "", "direction": [0, 0, 1]},)";
    EXPECT_NE(error_of(two_nodes + R"({"history": "0", "direction": [1, 0]}, {"history": "1", "direction": [1, 0, 0]}]})")
                  .find("nodes[1].direction"),
              std::string::npos);
    EXPECT_NE(error_of(two_nodes + R"({"history": "0", "direction": [1, 0, 0]}, {"history": "0", "direction": [1, 0, 0]}]})")
                  .find("duplicate"),
              std::string::npos);
    EXPECT_NE(error_of(two_nodes + R"({"history": "0", "direction": [1, 0, 0]}, {"history": "2", "direction": [1, 0, 0]}]})")
                  .find("nodes[2].history"),
              std::string::npos);
    EXPECT_NE(error_of(two_nodes + R"({"history": "0", "direction": [1, 0, 0]}, {"history": "1", "direction": [0.5, 0, 0]}]})")
                  .find("unit vector"),
              std::string::npos);
    EXPECT_NE(error_of(R"({"geometry": "planar", "N": 1, "nodes": [{"history": "", "direction": [0, 0, 1]}]})")
                  .find("z = 0"),
              std::string::npos);
}

TEST(report, json_and_csv_agree) {
    FidelityReport r = fidelity_exact_tree(optimal_n3_tree(), GuessRule::optimal());
    json j = to_json(r);
    EXPECT_EQ(j["fidelity"].get<double>(), r.fidelity);
    EXPECT_EQ(j["method"], "exact-tree");
    EXPECT_EQ(j["branches"].size(), 8u);
    std::string csv = to_csv(r);
    EXPECT_EQ(csv.rfind("# F=" + format_number(r.fidelity) + " N=3", 0), 0u);
    EXPECT_NE(csv.find("degree=4"), std::string::npos);
    EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 10);
    // CSV probability column parses back to the JSON value.
    std::istringstream lines(csv);
    std::string line;
    std::getline(lines, line);
    std::getline(lines, line);
    std::getline(lines, line);
    const auto first = line.find(',');
    const auto second = line.find(',', first + 1);
    const auto third = line.find(',', second + 1);
    EXPECT_EQ(std::stod(line.substr(second + 1, third - second - 1)),
              j["branches"][0]["probability"].get<double>());
}

TEST(series, csv_layout) {
    CoefficientSeries s{Scheme::PlanarOG, {{8, 0.9, 0.8, 0}, {16, 0.95, 0.8, 0}}};
    EXPECT_EQ(to_csv(s), "N,F,c_N\n8,0.9,0.8\n16,0.95,0.8\n");
    s.entries[0].standard_error = 0.1;
    EXPECT_EQ(to_csv(s).substr(0, 19), "N,F,c_N,c_N_stderr\n");
}

TEST(summary, required_fields) {
    CmComparison c;
    c.scheme = Scheme::FullOG;
    c.c_without_last = std::nan("");
    json j = to_json(c);
    for (const char *key : {"scheme", "c_extrapolated", "cm_coefficient", "ratio", "tolerance", "pass"}) {
        EXPECT_TRUE(j.contains(key)) << key;
    }
    EXPECT_TRUE(j["c_without_last"].is_null());
    EXPECT_EQ(j["scheme"], "3d-og");
}

TEST(trace, row_format) {
    TraceRow row{3, {0, 0, 1}, "01", BlochVector(1, 0, 0), 0.5};
    EXPECT_EQ(to_csv_row(row), "3,0,0,1,\"01\",1,0,0,0.5\n");
    EXPECT_EQ(trace_csv_header(), "index,n_x,n_y,n_z,outcomes,guess_x,guess_y,guess_z,f\n");
}

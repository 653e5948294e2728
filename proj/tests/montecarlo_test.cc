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

#include "locc/montecarlo.h"

#include <gtest/gtest.h>

#include <vector>

#include "locc/builtin.h"
#include "locc/errors.h"
#include "test_util.h"

using namespace locc;

namespace {

struct Moments {
    Vec3 mean;
    double second = 0;
    double second_sd = 0;
};

Moments sample_moments(Geometry g, int component, int count) {
    Xoshiro256 rng(99);
    Moments m;
    double s2 = 0;
    for (int i = 0; i < count; ++i) {
        BlochVector n = sample_state(g, rng);
        m.mean += n.vec();
        const double q = n[component] * n[component];
        m.second += q;
        s2 += q * q;
    }
    m.mean = m.mean / count;
    m.second /= count;
    m.second_sd = std::sqrt((s2 / count - m.second * m.second) / count);
    return m;
}

}  // namespace

TEST(sample_state, moments_full) {
    const int count = 1000000;
    Moments m = sample_moments(Geometry::Full, 2, count);
    // Each component has variance 1/3.
    const double sd = std::sqrt(1.0 / 3 / count);
    for (int i = 0; i < 3; ++i) {
        EXPECT_LT(std::abs(m.mean[i]), 4 * sd);
    }
    EXPECT_LT(std::abs(m.second - 1.0 / 3), 4 * m.second_sd);
}

TEST(sample_state, moments_planar) {
    const int count = 1000000;
    Moments m = sample_moments(Geometry::Planar, 0, count);
    const double sd = std::sqrt(0.5 / count);
    EXPECT_LT(std::abs(m.mean.x), 4 * sd);
    EXPECT_LT(std::abs(m.mean.y), 4 * sd);
    EXPECT_EQ(m.mean.z, 0.0);
    EXPECT_LT(std::abs(m.second - 0.5), 4 * m.second_sd);
}

TEST(config, validation) {
    McConfig c;
    c.samples = 99;
    EXPECT_THROW(c.validate(), ValidationError);
    c.samples = 100;
    c.batch_size = 0;
    EXPECT_THROW(c.validate(), ValidationError);
}

TEST(simulate, n2_and_n3_within_four_sigma) {
    McConfig c;
    McResult r2 = simulate_fidelity(optimal_n2_tree(), GuessRule::optimal(), c);
    EXPECT_EQ(r2.samples, 1000000);
    EXPECT_LT(std::abs(r2.mean - (3 + std::sqrt(2.0)) / 6), 4 * r2.standard_error);
    McResult r3 = simulate_fidelity(optimal_n3_tree(), GuessRule::optimal(), c);
    EXPECT_LT(std::abs(r3.mean - (3 + std::sqrt(3.0)) / 6), 4 * r3.standard_error);
    // The two error estimates agree to within a factor of two.
    EXPECT_GT(r3.batch_standard_error, 0.5 * r3.standard_error);
    EXPECT_LT(r3.batch_standard_error, 2 * r3.standard_error);
}

TEST(simulate, bit_identical_for_any_thread_count) {
    McConfig a;
    a.samples = 50000;
    a.batch_size = 1000;
    a.threads = 1;
    McConfig b = a;
    b.threads = 5;
    McResult ra = simulate_fidelity(optimal_n3_tree(), GuessRule::optimal(), a);
    McResult rb = simulate_fidelity(optimal_n3_tree(), GuessRule::optimal(), b);
    EXPECT_EQ(ra.mean, rb.mean);
    EXPECT_EQ(ra.standard_error, rb.standard_error);
    McConfig c = a;
    c.seed = a.seed + 1;
    EXPECT_NE(simulate_fidelity(optimal_n3_tree(), GuessRule::optimal(), c).mean, ra.mean);
}

TEST(simulate, fixed_strategy_matches_exact) {
    McConfig c;
    c.samples = 200000;
    for (const GuessRule &g : {GuessRule::optimal(), GuessRule::central_limit()}) {
        FixedStrategy f = make_fixed_axes(Geometry::Full, 2);
        McResult r = simulate_fidelity(f, g, c);
        EXPECT_LT(std::abs(r.mean - fidelity_exact_aggregated(f, g).fidelity), 4 * r.standard_error);
    }
    EXPECT_THROW(simulate_fidelity(make_fixed_axes(Geometry::Full, 1), GuessRule::fixed({}), c), ValidationError);
}

TEST(simulate, central_limit_tree_guess) {
    McConfig c;
    c.samples = 200000;
    StrategyTree t = tree_from_fixed(make_fixed_axes(Geometry::Planar, 2));
    McResult r = simulate_fidelity(t, GuessRule::central_limit(), c);
    EXPECT_LT(std::abs(r.mean - fidelity_exact_tree(t, GuessRule::central_limit()).fidelity), 4 * r.standard_error);
}

TEST(simulate, two_stage_matches_expanded_tree) {
    StrategyTree pilot = tree_from_fixed(make_fixed_axes(Geometry::Full, 1));
    TwoStageStrategy s = make_two_stage(Geometry::Full, 9, 3, 1.0, pilot);
    ExpandedStrategy e = expand_two_stage(s);
    McConfig c;
    c.samples = 200000;
    McResult direct = simulate_fidelity(s, c);
    McResult via_tree = simulate_fidelity(e.tree, e.guess, c);
    // Both walk the same outcomes with the same streams.
    EXPECT_EQ(direct.mean, via_tree.mean);
    EXPECT_LT(std::abs(direct.mean - fidelity_exact_tree(e.tree, e.guess).fidelity), 4 * direct.standard_error);
}

TEST(trace, rows_and_limit) {
    McConfig c;
    c.samples = 100;
    std::vector<TraceRow> rows;
    McResult r = simulate_fidelity(optimal_n2_tree(), GuessRule::optimal(), c,
                                   [&](const TraceRow &row) { rows.push_back(row); });
    ASSERT_EQ(rows.size(), 100u);
    double sum = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        EXPECT_EQ(rows[i].index, static_cast<std::int64_t>(i));
        EXPECT_EQ(rows[i].outcomes.size(), 2u);
        EXPECT_NEAR(rows[i].fidelity, (1 + dot(rows[i].state, rows[i].guess.vec())) / 2, 1e-15);
        sum += rows[i].fidelity;
    }
    EXPECT_NEAR(sum / 100, r.mean, 1e-14);
    c.samples = kMaxTraceSamples + 1;
    EXPECT_THROW(simulate_fidelity(optimal_n2_tree(), GuessRule::optimal(), c, [](const TraceRow &) {}),
                 ResourceError);
}

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

#include "locc/strategy.h"

#include <gtest/gtest.h>

#include <numbers>
#include <vector>

#include "locc/builtin.h"
#include "locc/errors.h"
#include "test_util.h"

using namespace locc;

TEST(history, encoding_and_strings) {
    OutcomeHistory h;
    h = h.extended(1).extended(0).extended(1);  // i1=1, i2=0, i3=1
    EXPECT_EQ(h.bits, 0b101u);
    EXPECT_EQ(h.length, 3);
    EXPECT_EQ(h.outcome(1), 1);
    EXPECT_EQ(h.outcome(2), 0);
    EXPECT_EQ(h.to_string(), "101");
    EXPECT_EQ(OutcomeHistory::parse("011").bits, 0b011u);
    EXPECT_EQ(OutcomeHistory::parse("011").outcome(3), 0);
    EXPECT_EQ(OutcomeHistory::parse("").length, 0);
    EXPECT_EQ(h.prefix(1), (OutcomeHistory{1, 1}));
    EXPECT_THROW(OutcomeHistory::parse("012"), ValidationError);
}

TEST(tree, layout_and_signed_directions) {
    StrategyTree t = optimal_n2_tree();
    EXPECT_EQ(t.copies(), 2);
    EXPECT_EQ(t.directions().size(), 3u);
    EXPECT_EQ(t.direction(0, 0), BlochVector(0, 0, 1));
    OutcomeHistory x{0b10, 2};  // i1 = 0, i2 = 1
    EXPECT_EQ(t.signed_direction(x, 1), (Vec3{0, 0, 1}));
    EXPECT_EQ(t.signed_direction(x, 2), (Vec3{-1, 0, 0}));
}

TEST(tree, validation) {
    EXPECT_THROW(StrategyTree(Geometry::Full, 2, std::vector<BlochVector>(2)), ValidationError);
    EXPECT_THROW(StrategyTree(Geometry::Full, 0, {}), ValidationError);
    EXPECT_THROW(StrategyTree(Geometry::Planar, 1, {BlochVector(0, 0, 1)}), ValidationError);
    EXPECT_THROW(StrategyTree::uniform(Geometry::Full, kMaxTreeCopies + 1, BlochVector()), ResourceError);
    StrategyTree t = StrategyTree::uniform(Geometry::Planar, 2, BlochVector(1, 0, 0));
    EXPECT_THROW(t.set_direction(1, 0, BlochVector(0, 1, 1)), ValidationError);
}

TEST(fixed, make_fixed_axes_examples) {
    FixedStrategy p = make_fixed_axes(Geometry::Planar, 1);
    ASSERT_EQ(p.axes.size(), 2u);
    EXPECT_EQ(p.copies(), 2);
    EXPECT_EQ(p.axes[0].axis, BlochVector(1, 0, 0));
    EXPECT_EQ(p.axes[1].axis, BlochVector(0, 1, 0));
    FixedStrategy f = make_fixed_axes(Geometry::Full, 2);
    ASSERT_EQ(f.axes.size(), 3u);
    EXPECT_EQ(f.copies(), 6);
    for (const auto &a : f.axes) {
        EXPECT_EQ(a.count, 2);
    }
    EXPECT_EQ(make_fixed_axes(Geometry::Planar, 7).copies(), 14);
    EXPECT_THROW(make_fixed_axes(Geometry::Full, 0), ValidationError);
}

TEST(fixed, tree_from_fixed_examples) {
    FixedStrategy p = make_fixed_axes(Geometry::Planar, 1);
    std::vector<int> order{0, 1};
    StrategyTree t = tree_from_fixed(p, order);
    EXPECT_EQ(t.direction(0, 0), BlochVector(1, 0, 0));
    EXPECT_EQ(t.direction(1, 0), BlochVector(0, 1, 0));
    EXPECT_EQ(t.direction(1, 1), BlochVector(0, 1, 0));

    FixedStrategy single{Geometry::Full, {{BlochVector(0, 0, 1), 1}}};
    EXPECT_EQ(tree_from_fixed(single).directions().size(), 1u);

    std::vector<int> bad{0, 0};
    EXPECT_THROW(tree_from_fixed(p, bad), ValidationError);
    std::vector<int> short_order{0};
    EXPECT_THROW(tree_from_fixed(p, short_order), ValidationError);
    std::vector<int> out_of_range{0, 2};
    EXPECT_THROW(tree_from_fixed(p, out_of_range), ValidationError);
}

TEST(fixed, count_classes) {
    auto planar = enumerate_count_classes(make_fixed_axes(Geometry::Planar, 1));
    ASSERT_EQ(planar.size(), 4u);
    double total = 0;
    for (const auto &c : planar) {
        EXPECT_EQ(c.multiplicity, 1);
        total += c.multiplicity;
    }
    EXPECT_EQ(total, 4);

    auto full = enumerate_count_classes(make_fixed_axes(Geometry::Full, 2));
    ASSERT_EQ(full.size(), 27u);
    total = 0;
    for (const auto &c : full) {
        total += c.multiplicity;
    }
    EXPECT_EQ(total, 64);

    auto p2 = enumerate_count_classes(make_fixed_axes(Geometry::Planar, 2));
    bool found = false;
    for (const auto &c : p2) {
        if (c.plus == std::vector<int>{1, 1}) {
            EXPECT_EQ(c.multiplicity, 4);
            EXPECT_EQ(c.to_string(), "1,1");
            found = true;
        }
    }
    EXPECT_TRUE(found);
}

TEST(two_stage, validation) {
    StrategyTree pilot = optimal_n2_tree();
    EXPECT_NO_THROW(make_two_stage(Geometry::Full, 6, 2, 1.0, pilot));
    EXPECT_THROW(make_two_stage(Geometry::Full, 5, 2, 1.0, pilot), ValidationError);   // odd remainder
    EXPECT_THROW(make_two_stage(Geometry::Full, 2, 2, 1.0, pilot), ValidationError);   // N0 = N
    EXPECT_THROW(make_two_stage(Geometry::Full, 8, 3, 1.0, pilot), ValidationError);   // pilot size
    EXPECT_THROW(make_two_stage(Geometry::Full, 6, 2, 1.5, pilot), ValidationError);   // lambda
    EXPECT_THROW(make_two_stage(Geometry::Planar, 6, 2, 1.0, pilot), ValidationError); // geometry
    StrategyTree planar_pilot = StrategyTree::uniform(Geometry::Planar, 2, BlochVector(1, 0, 0));
    EXPECT_NO_THROW(make_two_stage(Geometry::Planar, 5, 2, 1.0, planar_pilot));
}

TEST(two_stage, lambda_zero_keeps_pilot_guess) {
    TwoStageStrategy s = make_two_stage(Geometry::Full, 12, 2, 0.0, optimal_n2_tree());
    BlochVector m0(0.2, 0.3, 0.9);
    for (int pu = 0; pu <= 5; ++pu) {
        for (int pv = 0; pv <= 5; ++pv) {
            EXPECT_LT(locc::testing::distance(two_stage_guess(s, m0, pu, pv).vec(), m0.vec()), 1e-15);
        }
    }
}

TEST(two_stage, balanced_counts_keep_pilot_guess) {
    TwoStageStrategy s = make_two_stage(Geometry::Full, 14, 2, 1.0, optimal_n2_tree());
    BlochVector m0(0.2, 0.3, 0.9);
    EXPECT_LT(locc::testing::distance(two_stage_guess(s, m0, 3, 3).vec(), m0.vec()), 1e-15);
}

TEST(two_stage, guess_follows_ansatz) {
    TwoStageStrategy s = make_two_stage(Geometry::Full, 12, 2, 0.7, optimal_n2_tree());
    BlochVector m0(0, 0, 1);
    TransverseFrame f = transverse_frame(Geometry::Full, m0);
    EXPECT_NEAR(dot(f.u, m0.vec()), 0, 1e-15);
    EXPECT_NEAR(dot(f.v, m0.vec()), 0, 1e-15);
    EXPECT_NEAR(dot(f.u, f.v), 0, 1e-15);
    // half = 5 copies per axis; plus_u = 5 -> r_u = 1, plus_v = 1 -> r_v = -0.6.
    const double ru = 1, rv = -0.6, r = std::hypot(ru, rv), w = 0.7 * r;
    Vec3 expected = std::cos(w) * m0.vec() + std::sin(w) * (ru * f.u + rv * f.v) / r;
    EXPECT_LT(locc::testing::distance(two_stage_guess(s, m0, 5, 1).vec(), expected), 1e-14);
}

TEST(two_stage, planar_uses_single_axis) {
    StrategyTree pilot = StrategyTree::uniform(Geometry::Planar, 1, BlochVector(1, 0, 0));
    TwoStageStrategy s = make_two_stage(Geometry::Planar, 5, 1, 1.0, pilot);
    BlochVector m0(1, 0, 0);
    TransverseFrame f = transverse_frame(Geometry::Planar, m0);
    EXPECT_LT(locc::testing::distance(f.u, {0, 1, 0}), 1e-15);
    BlochVector g = two_stage_guess(s, m0, 4, 0);  // r_u = 1
    EXPECT_EQ(g.z(), 0.0);
    EXPECT_NEAR(g.x(), std::cos(1.0), 1e-15);
    EXPECT_NEAR(g.y(), std::sin(1.0), 1e-15);
}

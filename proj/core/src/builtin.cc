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

#include "locc/builtin.h"

#include <cmath>
#include <numbers>

#include "locc/errors.h"
#include "locc/optimizer.h"

namespace locc {

StrategyTree optimal_n2_tree() {
    return StrategyTree(Geometry::Full, 2, {axis(2), axis(0), axis(0)});
}

StrategyTree optimal_n3_tree() {
    FixedStrategy f{Geometry::Full, {{axis(0), 1}, {axis(1), 1}, {axis(2), 1}}};
    return tree_from_fixed(f);
}

N4Frame n4_frame(const OutcomeHistory &x) {
    Vec3 m1 = x.outcome(1) == 0 ? axis(0).vec() : -axis(0).vec();
    Vec3 m2 = x.outcome(2) == 0 ? axis(1).vec() : -axis(1).vec();
    N4Frame f;
    f.s = (m1 + m2) / std::numbers::sqrt2;
    f.u1 = cross(m1, m2);
    f.v1 = cross(f.u1, f.s);
    return f;
}

StrategyTree n4_ansatz_tree(double alpha, double beta, double gamma) {
    StrategyTree t = StrategyTree::uniform(Geometry::Full, 4, axis(0));
    t.set_direction(1, 0, axis(1));
    t.set_direction(1, 1, axis(1));
    for (std::uint64_t h = 0; h < 4; ++h) {
        N4Frame f = n4_frame({h, 2});
        t.set_direction(2, h, BlochVector(std::cos(alpha) * f.u1 + std::sin(alpha) * f.v1));
    }
    for (std::uint64_t h = 0; h < 8; ++h) {
        OutcomeHistory x{h, 3};
        N4Frame f = n4_frame(x);
        Vec3 m3 = t.signed_direction(x, 3);
        Vec3 u2 = cross(f.s, m3);
        Vec3 v2 = std::cos(beta) * m3 - std::sin(beta) * f.s;
        t.set_direction(3, h, BlochVector(std::cos(gamma) * u2 + std::sin(gamma) * v2));
    }
    return t;
}

TwoStageStrategy default_two_stage(Geometry geometry, int copies, int pilot_size, double lambda) {
    if (pilot_size < 1 || pilot_size >= copies) {
        throw ValidationError("two-stage pilot size must satisfy 1 <= N0 < N");
    }
    StrategyTree pilot = optimize_one_step_adaptive(geometry, pilot_size, OptimizationConfig{}).strategy;
    return make_two_stage(geometry, copies, pilot_size, lambda, std::move(pilot));
}

}  // namespace locc

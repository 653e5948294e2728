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

#ifndef LOCC_TESTS_TEST_UTIL_H
#define LOCC_TESTS_TEST_UTIL_H

#include <cmath>
#include <vector>

#include "locc/bloch.h"
#include "locc/montecarlo.h"
#include "locc/rng.h"
#include "locc/strategy.h"

namespace locc::testing {

inline BlochVector random_direction(Geometry g, Xoshiro256 &rng) {
    return sample_state(g, rng);
}

inline StrategyTree random_tree(Geometry g, int copies, Xoshiro256 &rng) {
    std::vector<BlochVector> dirs((std::size_t{1} << copies) - 1);
    for (auto &d : dirs) {
        d = random_direction(g, rng);
    }
    return StrategyTree(g, copies, std::move(dirs));
}

inline Rotation random_rotation(Xoshiro256 &rng) {
    Rotation a = Rotation::about(random_direction(Geometry::Full, rng).vec(), 6.283185307179586 * rng.uniform());
    Rotation b = Rotation::about(random_direction(Geometry::Full, rng).vec(), 6.283185307179586 * rng.uniform());
    Rotation r;
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            double s = 0;
            for (int k = 0; k < 3; ++k) {
                s += a.m[3 * i + k] * b.m[3 * k + j];
            }
            r.m[3 * i + j] = s;
        }
    }
    return r;
}

inline double distance(const Vec3 &a, const Vec3 &b) {
    return norm(a - b);
}

}  // namespace locc::testing

#endif

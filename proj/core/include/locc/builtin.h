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

#ifndef LOCC_BUILTIN_H
#define LOCC_BUILTIN_H

#include "locc/strategy.h"

// Strategies with known closed-form or published fidelities, constructed in code.

namespace locc {

/// N=2: m(root) = z, both second measurements along x.
StrategyTree optimal_n2_tree();

/// N=3: e1, e2, e3 regardless of outcomes.
StrategyTree optimal_n3_tree();

/// Frame vectors of the N=4 ansatz for one outcome history of length >= 2.
struct N4Frame {
    Vec3 s;   // (m(x1) + m(x2)) / sqrt(2), the N=2 guess
    Vec3 u1;  // m(x1) x m(x2)
    Vec3 v1;  // u1 x s
};
N4Frame n4_frame(const OutcomeHistory &x);

/// Four-copy ansatz tree. The first two measurements are e1 and e2; the third
/// is cos(alpha) u1 + sin(alpha) v1; the fourth is cos(gamma) u2 + sin(gamma) v2
/// with u2 = s x m(x3) and v2 = cos(beta) m(x3) - sin(beta) s, where m(x3)
/// is the signed third direction.
StrategyTree n4_ansatz_tree(double alpha, double beta, double gamma);

/// Angles at which the ansatz attains F = 0.8206.
inline constexpr double kN4Alpha = 0.502;
inline constexpr double kN4Beta = 0.584;
inline constexpr double kN4Gamma = 0.538;

/// Two-stage scheme whose pilot is the one-step-adaptive tree on N0 copies.
/// Pilot construction takes a few seconds at N0 = 12.
TwoStageStrategy default_two_stage(Geometry geometry, int copies, int pilot_size, double lambda);

}  // namespace locc

#endif

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

#ifndef LOCC_STRATEGY_H
#define LOCC_STRATEGY_H

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "locc/bloch.h"

namespace locc {

/// Largest number of copies a StrategyTree may hold (2^N - 1 stored vectors).
inline constexpr int kMaxTreeCopies = 20;

/// Outcomes i_1..i_k of the first k measurements.
///
/// Outcome 0 is the projection onto O(+m), outcome 1 onto O(-m). The integer
/// encoding reads i_k ... i_1 as a binary number, so i_1 is bit 0.
struct OutcomeHistory {
    std::uint64_t bits = 0;
    int length = 0;

    /// Outcome of the k-th measurement, 1 <= k <= length.
    int outcome(int k) const {
        return static_cast<int>((bits >> (k - 1)) & 1U);
    }
    /// The first k outcomes.
    OutcomeHistory prefix(int k) const {
        return {k == 0 ? 0 : bits & ((std::uint64_t{1} << k) - 1), k};
    }
    /// Appends outcome i_{length+1}.
    OutcomeHistory extended(int outcome) const {
        return {bits | (static_cast<std::uint64_t>(outcome) << length), length + 1};
    }
    /// Bit string i_k ... i_1; the latest outcome is written first.
    std::string to_string() const;
    /// Inverse of to_string. Throws ValidationError on characters other than 0/1.
    static OutcomeHistory parse(std::string_view s);

    bool operator==(const OutcomeHistory &) const = default;
};

/// Fully adaptive strategy: one measurement direction per outcome history of
/// length 0..N-1, stored in a complete binary tree.
///
/// Only the direction used after the 0/1 split is stored; the outcome bit sets
/// the sign of the projector, so m(1x) = -m(0x) holds by construction.
class StrategyTree {
   public:
    /// `directions` in heap order: index(depth, h) = 2^depth - 1 + h.
    StrategyTree(Geometry geometry, int copies, std::vector<BlochVector> directions);
    /// Every node set to `fill`.
    static StrategyTree uniform(Geometry geometry, int copies, const BlochVector &fill);

    Geometry geometry() const {
        return geometry_;
    }
    int copies() const {
        return copies_;
    }
    std::uint64_t branch_count() const {
        return std::uint64_t{1} << copies_;
    }

    static std::size_t index(int depth, std::uint64_t history_bits) {
        return ((std::size_t{1} << depth) - 1) + static_cast<std::size_t>(history_bits);
    }
    /// Direction for the (depth+1)-th measurement after the given outcomes.
    const BlochVector &direction(int depth, std::uint64_t history_bits) const {
        return directions_[index(depth, history_bits)];
    }
    const BlochVector &direction(const OutcomeHistory &h) const {
        return direction(h.length, h.bits);
    }
    /// Throws ValidationError if `v` violates the geometry.
    void set_direction(int depth, std::uint64_t history_bits, const BlochVector &v);
    std::span<const BlochVector> directions() const {
        return directions_;
    }

    /// Signed direction of the k-th projector obtained along `x`:
    /// (-1)^{i_k} times the stored direction at x's first k-1 outcomes.
    Vec3 signed_direction(const OutcomeHistory &x, int k) const {
        const Vec3 &d = direction(x.prefix(k - 1)).vec();
        return x.outcome(k) == 0 ? d : -d;
    }

    /// Same tree with every direction rotated. Full geometry only.
    StrategyTree rotated(const Rotation &r) const;

   private:
    Geometry geometry_;
    int copies_;
    std::vector<BlochVector> directions_;
};

/// History-independent scheme: each axis is measured `count` times.
struct FixedAxis {
    BlochVector axis;
    int count = 1;
};

struct FixedStrategy {
    Geometry geometry = Geometry::Full;
    std::vector<FixedAxis> axes;

    int copies() const;
    /// Throws ValidationError on zero counts, out-of-geometry axes or an empty list.
    void validate() const;
};

/// The canonical axes (e1, e2 for Planar; e1, e2, e3 for Full), each measured
/// `per_axis` times.
FixedStrategy make_fixed_axes(Geometry geometry, int per_axis);

/// Expands a fixed strategy into a tree. `order[k]` is the axis used for the
/// (k+1)-th copy; it must use axis i exactly axes[i].count times.
StrategyTree tree_from_fixed(const FixedStrategy &fixed, std::span<const int> order);
/// Blocked order: all copies of axis 0, then axis 1, and so on.
StrategyTree tree_from_fixed(const FixedStrategy &fixed);

/// Number of +1 outcomes per axis, aggregated over all outcome strings that
/// produce them.
struct OutcomeCounts {
    std::vector<int> plus;
    /// Product of binomial coefficients C(count_i, plus_i).
    double multiplicity = 1;

    std::string to_string() const;
};

/// All prod(count_i + 1) count classes, last axis varying fastest.
std::vector<OutcomeCounts> enumerate_count_classes(const FixedStrategy &fixed);

/// Pilot tree followed by transverse exploration around the pilot's optimal
/// guess M0.
///
/// Full: sigma.u and sigma.v are each measured (N - N0) / 2 times, alternating
/// u, v, u, v. Planar: the single in-plane direction orthogonal to M0 is
/// measured N - N0 times.
struct TwoStageStrategy {
    Geometry geometry = Geometry::Full;
    int copies = 0;
    int pilot_size = 0;
    StrategyTree pilot;
    double lambda = 1;

    int exploration_copies() const {
        return copies - pilot_size;
    }
};

/// Throws ValidationError unless 1 <= N0 < N, the pilot has N0 copies and the
/// pilot's geometry matches, lambda is in [0, 1] and (Full) N - N0 is even.
TwoStageStrategy make_two_stage(Geometry geometry, int copies, int pilot_size, double lambda, StrategyTree pilot);

/// Orthonormal exploration directions around a pilot guess.
struct TransverseFrame {
    Vec3 u;
    Vec3 v;  // zero vector in Planar geometry
};
TransverseFrame transverse_frame(Geometry geometry, const BlochVector &m0);

/// Final guess of the two-stage scheme:
///   M = M0 cos(w) + sin(w) (u cos(t) + v sin(t)),
///   w = lambda * |r|, tan(t) = r_v / r_u, r_i = 2 alpha_i - 1,
/// where alpha_i is the fraction of +1 outcomes along axis i. Planar uses
/// the signed angle w = lambda * r_u along u alone.
BlochVector two_stage_guess(const TwoStageStrategy &s, const BlochVector &m0, int plus_u, int plus_v);

}  // namespace locc

#endif

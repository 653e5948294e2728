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

#include <algorithm>
#include <cmath>
#include <utility>

#include "locc/errors.h"

namespace locc {

std::string OutcomeHistory::to_string() const {
    std::string s;
    s.reserve(length);
    for (int k = length; k >= 1; --k) {
        s.push_back(outcome(k) ? '1' : '0');
    }
    return s;
}

OutcomeHistory OutcomeHistory::parse(std::string_view s) {
    if (s.size() > 63) {
        throw ValidationError("outcome history longer than 63 bits");
    }
    OutcomeHistory h;
    h.length = static_cast<int>(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c != '0' && c != '1') {
            throw ValidationError("outcome history '" + std::string(s) + "' must contain only 0 and 1");
        }
        // s[0] is i_k, the most significant bit.
        if (c == '1') {
            h.bits |= std::uint64_t{1} << (s.size() - 1 - i);
        }
    }
    return h;
}

StrategyTree::StrategyTree(Geometry geometry, int copies, std::vector<BlochVector> directions)
    : geometry_(geometry), copies_(copies), directions_(std::move(directions)) {
    if (copies < 1) {
        throw ValidationError("a strategy needs at least one copy");
    }
    if (copies > kMaxTreeCopies) {
        throw ResourceError("strategy tree too deep", static_cast<std::uint64_t>(copies), kMaxTreeCopies);
    }
    std::size_t expected = (std::size_t{1} << copies) - 1;
    if (directions_.size() != expected) {
        throw ValidationError("strategy tree with " + std::to_string(copies) + " copies needs " +
                              std::to_string(expected) + " directions, got " +
                              std::to_string(directions_.size()));
    }
    for (const auto &d : directions_) {
        if (!d.fits(geometry_)) {
            throw ValidationError("planar strategy contains an out-of-plane direction");
        }
    }
}

StrategyTree StrategyTree::uniform(Geometry geometry, int copies, const BlochVector &fill) {
    if (copies < 1 || copies > kMaxTreeCopies) {
        throw ResourceError("strategy tree depth out of range", static_cast<std::uint64_t>(std::max(copies, 0)),
                            kMaxTreeCopies);
    }
    return StrategyTree(geometry, copies, std::vector<BlochVector>((std::size_t{1} << copies) - 1, fill));
}

void StrategyTree::set_direction(int depth, std::uint64_t history_bits, const BlochVector &v) {
    if (!v.fits(geometry_)) {
        throw ValidationError("planar strategy cannot hold an out-of-plane direction");
    }
    directions_[index(depth, history_bits)] = v;
}

StrategyTree StrategyTree::rotated(const Rotation &r) const {
    std::vector<BlochVector> out;
    out.reserve(directions_.size());
    for (const auto &d : directions_) {
        out.push_back(geometry_ == Geometry::Planar ? BlochVector::in_geometry(geometry_, r.apply(d.vec()))
                                                    : r.apply(d));
    }
    return StrategyTree(geometry_, copies_, std::move(out));
}

int FixedStrategy::copies() const {
    int n = 0;
    for (const auto &a : axes) {
        n += a.count;
    }
    return n;
}

void FixedStrategy::validate() const {
    if (axes.empty()) {
        throw ValidationError("fixed strategy needs at least one axis");
    }
    for (const auto &a : axes) {
        if (a.count < 1) {
            throw ValidationError("fixed strategy axis counts must be >= 1");
        }
        if (!a.axis.fits(geometry)) {
            throw ValidationError("planar fixed strategy contains an out-of-plane axis");
        }
    }
}

FixedStrategy make_fixed_axes(Geometry geometry, int per_axis) {
    if (per_axis < 1) {
        throw ValidationError("per-axis repetition count must be >= 1");
    }
    FixedStrategy f;
    f.geometry = geometry;
    for (int i = 0; i < ambient_dimension(geometry); ++i) {
        f.axes.push_back({axis(i), per_axis});
    }
    return f;
}

StrategyTree tree_from_fixed(const FixedStrategy &fixed, std::span<const int> order) {
    fixed.validate();
    const int n = fixed.copies();
    if (static_cast<int>(order.size()) != n) {
        throw ValidationError("measurement order has length " + std::to_string(order.size()) + ", expected " +
                              std::to_string(n));
    }
    std::vector<int> used(fixed.axes.size(), 0);
    for (int a : order) {
        if (a < 0 || a >= static_cast<int>(fixed.axes.size())) {
            throw ValidationError("measurement order refers to unknown axis " + std::to_string(a));
        }
        ++used[a];
    }
    for (std::size_t i = 0; i < used.size(); ++i) {
        if (used[i] != fixed.axes[i].count) {
            throw ValidationError("measurement order uses axis " + std::to_string(i) + " " +
                                  std::to_string(used[i]) + " times, expected " +
                                  std::to_string(fixed.axes[i].count));
        }
    }
    if (n > kMaxTreeCopies) {
        throw ResourceError("fixed strategy too large to expand into a tree", static_cast<std::uint64_t>(n),
                            kMaxTreeCopies);
    }
    std::vector<BlochVector> dirs;
    dirs.reserve((std::size_t{1} << n) - 1);
    for (int depth = 0; depth < n; ++depth) {
        dirs.insert(dirs.end(), std::size_t{1} << depth, fixed.axes[order[depth]].axis);
    }
    return StrategyTree(fixed.geometry, n, std::move(dirs));
}

StrategyTree tree_from_fixed(const FixedStrategy &fixed) {
    std::vector<int> order;
    for (std::size_t i = 0; i < fixed.axes.size(); ++i) {
        order.insert(order.end(), std::max(fixed.axes[i].count, 0), static_cast<int>(i));
    }
    return tree_from_fixed(fixed, order);
}

std::string OutcomeCounts::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < plus.size(); ++i) {
        if (i) {
            s.push_back(',');
        }
        s += std::to_string(plus[i]);
    }
    return s;
}

std::vector<OutcomeCounts> enumerate_count_classes(const FixedStrategy &fixed) {
    fixed.validate();
    const std::size_t m = fixed.axes.size();
    // Binomial rows per axis.
    std::vector<std::vector<double>> binom(m);
    for (std::size_t i = 0; i < m; ++i) {
        int c = fixed.axes[i].count;
        binom[i].assign(c + 1, 1.0);
        for (int a = 1; a <= c; ++a) {
            binom[i][a] = binom[i][a - 1] * (c - a + 1) / a;
        }
    }
    std::vector<OutcomeCounts> out;
    std::vector<int> cur(m, 0);
    while (true) {
        OutcomeCounts oc;
        oc.plus = cur;
        for (std::size_t i = 0; i < m; ++i) {
            oc.multiplicity *= binom[i][cur[i]];
        }
        out.push_back(std::move(oc));
        std::size_t i = m;
        while (i > 0) {
            --i;
            if (++cur[i] <= fixed.axes[i].count) {
                break;
            }
            cur[i] = 0;
            if (i == 0) {
                return out;
            }
        }
    }
}

TwoStageStrategy make_two_stage(Geometry geometry, int copies, int pilot_size, double lambda, StrategyTree pilot) {
    if (pilot_size < 1 || pilot_size >= copies) {
        throw ValidationError("two-stage pilot size must satisfy 1 <= N0 < N");
    }
    if (pilot.copies() != pilot_size) {
        throw ValidationError("pilot tree has " + std::to_string(pilot.copies()) + " copies, expected " +
                              std::to_string(pilot_size));
    }
    if (pilot.geometry() != geometry) {
        throw ValidationError("pilot tree geometry does not match the two-stage geometry");
    }
    if (!(lambda >= 0 && lambda <= 1)) {
        throw ValidationError("two-stage lambda must lie in [0, 1]");
    }
    if (geometry == Geometry::Full && (copies - pilot_size) % 2 != 0) {
        throw ValidationError("two-stage exploration copies N - N0 must be even");
    }
    return TwoStageStrategy{geometry, copies, pilot_size, std::move(pilot), lambda};
}

TransverseFrame transverse_frame(Geometry geometry, const BlochVector &m0) {
    if (geometry == Geometry::Planar) {
        return {cross(Vec3{0, 0, 1}, m0.vec()), Vec3{}};
    }
    Vec3 u = any_orthogonal(m0.vec());
    return {u, cross(m0.vec(), u)};
}

BlochVector two_stage_guess(const TwoStageStrategy &s, const BlochVector &m0, int plus_u, int plus_v) {
    TransverseFrame f = transverse_frame(s.geometry, m0);
    const int e = s.exploration_copies();
    if (s.geometry == Geometry::Planar) {
        double ru = 2.0 * plus_u / e - 1;
        double w = s.lambda * ru;
        return BlochVector::in_geometry(s.geometry, std::cos(w) * m0.vec() + std::sin(w) * f.u);
    }
    const int half = e / 2;
    double ru = 2.0 * plus_u / half - 1;
    double rv = 2.0 * plus_v / half - 1;
    double r = std::hypot(ru, rv);
    if (r == 0) {
        return m0;
    }
    double w = s.lambda * r;
    Vec3 transverse = (ru / r) * f.u + (rv / r) * f.v;
    return BlochVector(std::cos(w) * m0.vec() + std::sin(w) * transverse);
}

}  // namespace locc

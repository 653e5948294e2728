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

#include "locc/quadrature.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "locc/errors.h"

namespace locc {

QuadratureRule::QuadratureRule(Geometry geometry, int exact_degree, std::vector<BlochVector> nodes,
                               std::vector<double> weights)
    : geometry_(geometry), exact_degree_(exact_degree), nodes_(std::move(nodes)), weights_(std::move(weights)) {
    if (nodes_.size() != weights_.size() || nodes_.empty()) {
        throw ValidationError("quadrature rule needs matching, non-empty node and weight lists");
    }
}

GaussLegendre gauss_legendre(int count) {
    if (count < 1) {
        throw ValidationError("Gauss-Legendre rule needs at least one node");
    }
    GaussLegendre gl;
    gl.nodes.resize(count);
    gl.weights.resize(count);
    const int n = count;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        // Tricomi initial guess, then Newton on P_n.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 1;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double pn = n == 1 ? x : p1;
            double pnm1 = n == 1 ? 1 : p0;
            dp = n * (x * pn - pnm1) / (x * x - 1);
            double dx = pn / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) {
                break;
            }
        }
        // Recompute the derivative at the converged root.
        double p0 = 1, p1 = x;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        double pn = n == 1 ? x : p1;
        double pnm1 = n == 1 ? 1 : p0;
        dp = n * (x * pn - pnm1) / (x * x - 1);
        double w = 2 / ((1 - x * x) * dp * dp);
        gl.nodes[i] = -x;
        gl.nodes[n - 1 - i] = x;
        gl.weights[i] = w;
        gl.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) {
        gl.nodes[n / 2] = 0.0;
    }
    return gl;
}

QuadratureRule make_quadrature(Geometry geometry, int exact_degree) {
    if (exact_degree < 0) {
        throw ValidationError("quadrature degree must be non-negative");
    }
    const std::size_t ring = static_cast<std::size_t>(exact_degree) + 1;
    std::vector<BlochVector> nodes;
    std::vector<double> weights;
    if (geometry == Geometry::Planar) {
        if (ring > kMaxQuadratureNodes) {
            throw ResourceError("planar quadrature too large", ring, kMaxQuadratureNodes);
        }
        nodes.reserve(ring);
        for (std::size_t k = 0; k < ring; ++k) {
            double phi = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(ring);
            nodes.emplace_back(std::cos(phi), std::sin(phi), 0.0);
            weights.push_back(1.0 / static_cast<double>(ring));
        }
        return QuadratureRule(geometry, exact_degree, std::move(nodes), std::move(weights));
    }

    const std::size_t polar = (ring + 1) / 2;
    if (polar * ring > kMaxQuadratureNodes) {
        throw ResourceError("spherical quadrature too large", polar * ring, kMaxQuadratureNodes);
    }
    GaussLegendre gl = gauss_legendre(static_cast<int>(polar));
    nodes.reserve(polar * ring);
    weights.reserve(polar * ring);
    for (std::size_t i = 0; i < polar; ++i) {
        double ct = gl.nodes[i];
        double st = std::sqrt(std::max(0.0, 1 - ct * ct));
        for (std::size_t k = 0; k < ring; ++k) {
            double phi = 2 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(ring);
            nodes.emplace_back(st * std::cos(phi), st * std::sin(phi), ct);
            weights.push_back(gl.weights[i] / 2 / static_cast<double>(ring));
        }
    }
    return QuadratureRule(geometry, exact_degree, std::move(nodes), std::move(weights));
}

namespace {

// Sum over perfect pairings of `vs[0..]` of the product of pairwise dot products.
double pairing_sum(std::vector<Vec3> &vs, std::size_t begin) {
    if (begin == vs.size()) {
        return 1.0;
    }
    double total = 0;
    for (std::size_t j = begin + 1; j < vs.size(); ++j) {
        double d = dot(vs[begin], vs[j]);
        std::swap(vs[begin + 1], vs[j]);
        total += d * pairing_sum(vs, begin + 2);
        std::swap(vs[begin + 1], vs[j]);
    }
    return total;
}

}  // namespace

Vec3 moment_oracle(Geometry geometry, std::span<const BlochVector> directions) {
    if (directions.size() > kMaxOracleDirections) {
        throw ResourceError("moment oracle pairing count explodes", directions.size(), kMaxOracleDirections);
    }
    const std::size_t order = directions.size() + 1;
    if (order % 2 == 1) {
        return {};
    }
    const int d = ambient_dimension(geometry);
    double denom = 1;
    for (std::size_t p = 0; p < order / 2; ++p) {
        denom *= d + 2.0 * static_cast<double>(p);
    }
    Vec3 out;
    double comps[3] = {0, 0, 0};
    for (int i = 0; i < d; ++i) {
        std::vector<Vec3> vs;
        vs.push_back(axis(i).vec());
        for (const auto &a : directions) {
            Vec3 v = a.vec();
            if (geometry == Geometry::Planar) {
                v.z = 0;
            }
            vs.push_back(v);
        }
        comps[i] = pairing_sum(vs, 0) / denom;
    }
    out = {comps[0], comps[1], comps[2]};
    return out;
}

}  // namespace locc

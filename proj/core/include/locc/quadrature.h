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

#ifndef LOCC_QUADRATURE_H
#define LOCC_QUADRATURE_H

#include <cstddef>
#include <span>
#include <vector>

#include "locc/bloch.h"

namespace locc {

/// Upper bound on the number of nodes make_quadrature will produce.
inline constexpr std::size_t kMaxQuadratureNodes = std::size_t{1} << 22;

/// Cubature rule for the uniform probability measure on the circle (Planar)
/// or the sphere (Full). Weights sum to one.
///
/// Every polynomial in the components of n of total degree <= exact_degree
/// is integrated exactly up to rounding.
class QuadratureRule {
   public:
    QuadratureRule(Geometry geometry, int exact_degree, std::vector<BlochVector> nodes,
                   std::vector<double> weights);

    Geometry geometry() const {
        return geometry_;
    }
    int exact_degree() const {
        return exact_degree_;
    }
    std::size_t size() const {
        return nodes_.size();
    }
    std::span<const BlochVector> nodes() const {
        return nodes_;
    }
    std::span<const double> weights() const {
        return weights_;
    }

    /// Weighted sum of f over the nodes.
    template <typename F>
    auto integrate(F &&f) const {
        decltype(f(nodes_[0])) acc{};
        for (std::size_t j = 0; j < nodes_.size(); ++j) {
            acc += weights_[j] * f(nodes_[j]);
        }
        return acc;
    }

   private:
    Geometry geometry_;
    int exact_degree_;
    std::vector<BlochVector> nodes_;
    std::vector<double> weights_;
};

/// Full: Gauss-Legendre in cos(theta) with ceil((d+1)/2) nodes times d+1
/// equally spaced azimuths. Planar: d+1 equally spaced points on the circle.
/// Throws ValidationError for d < 0 and ResourceError above kMaxQuadratureNodes.
QuadratureRule make_quadrature(Geometry geometry, int exact_degree);

/// Gauss-Legendre nodes and weights on [-1, 1], ascending nodes. Weights sum to 2.
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussLegendre gauss_legendre(int count);

/// Largest number of directions moment_oracle accepts.
inline constexpr std::size_t kMaxOracleDirections = 10;

/// Exact value of the integral of n * prod_j (n . a_j) over the uniform prior,
/// by summing Kronecker-delta pairings of the isotropic moment tensor.
///
/// Independent of make_quadrature; tests use it as the reference. In Planar
/// geometry the directions are projected onto the xy-plane.
Vec3 moment_oracle(Geometry geometry, std::span<const BlochVector> directions);

}  // namespace locc

#endif

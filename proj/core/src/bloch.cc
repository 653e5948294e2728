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

#include "locc/bloch.h"

#include <cmath>
#include <limits>
#include <numbers>

#include "locc/errors.h"

namespace locc {

std::string_view geometry_name(Geometry g) {
    return g == Geometry::Planar ? "planar" : "full";
}

Geometry parse_geometry(std::string_view name) {
    if (name == "planar" || name == "2d" || name == "2D") {
        return Geometry::Planar;
    }
    if (name == "full" || name == "3d" || name == "3D") {
        return Geometry::Full;
    }
    throw ValidationError("unknown geometry '" + std::string(name) + "' (expected planar or full)");
}

BlochVector::BlochVector(const Vec3 &v) {
    double n = norm(v);
    if (!(n > 0) || !std::isfinite(n)) {
        throw ValidationError("Bloch vector must be finite and non-zero");
    }
    // Already unit to rounding: keep bits so serialization round-trips.
    v_ = std::abs(n - 1) <= 4 * std::numeric_limits<double>::epsilon() ? v : v / n;
}

BlochVector BlochVector::in_geometry(Geometry g, const Vec3 &v) {
    if (g == Geometry::Planar) {
        return BlochVector(Vec3{v.x, v.y, 0.0});
    }
    return BlochVector(v);
}

BlochVector axis(int index) {
    switch (index) {
        case 0:
            return {1, 0, 0};
        case 1:
            return {0, 1, 0};
        case 2:
            return {0, 0, 1};
    }
    throw ValidationError("axis index out of range: " + std::to_string(index));
}

BlochVector angles_to_vector(Geometry g, double polar, double azimuth) {
    if (g == Geometry::Planar) {
        return BlochVector(Vec3{std::cos(azimuth), std::sin(azimuth), 0.0});
    }
    double s = std::sin(polar);
    return BlochVector(Vec3{s * std::cos(azimuth), s * std::sin(azimuth), std::cos(polar)});
}

SphericalAngles vector_to_angles(Geometry g, const BlochVector &v) {
    if (g == Geometry::Planar) {
        return {std::numbers::pi / 2, std::atan2(v.y(), v.x())};
    }
    double rho = std::hypot(v.x(), v.y());
    double polar = std::atan2(rho, v.z());
    double azimuth = rho == 0.0 ? 0.0 : std::atan2(v.y(), v.x());
    return {polar, azimuth};
}

Vec3 any_orthogonal(const Vec3 &v) {
    // Cross with the canonical axis least aligned with v.
    double ax = std::abs(v.x), ay = std::abs(v.y), az = std::abs(v.z);
    Vec3 e = ax <= ay && ax <= az ? Vec3{1, 0, 0} : (ay <= az ? Vec3{0, 1, 0} : Vec3{0, 0, 1});
    Vec3 c = cross(v, e);
    return c / norm(c);
}

Rotation Rotation::about(const Vec3 &axis, double angle) {
    Vec3 k = axis / norm(axis);
    double c = std::cos(angle), s = std::sin(angle), t = 1 - c;
    Rotation r;
    r.m = {t * k.x * k.x + c,       t * k.x * k.y - s * k.z, t * k.x * k.z + s * k.y,
           t * k.x * k.y + s * k.z, t * k.y * k.y + c,       t * k.y * k.z - s * k.x,
           t * k.x * k.z - s * k.y, t * k.y * k.z + s * k.x, t * k.z * k.z + c};
    return r;
}

}  // namespace locc

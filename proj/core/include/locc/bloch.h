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

#ifndef LOCC_BLOCH_H
#define LOCC_BLOCH_H

#include <array>
#include <cmath>
#include <string>
#include <string_view>

namespace locc {

/// Prior support of the signal state.
///
/// Planar states lie on the equator of the Bloch sphere (the xy-plane); Full
/// states may sit anywhere on the sphere. Both priors are uniform.
enum class Geometry { Planar, Full };

std::string_view geometry_name(Geometry g);
/// Accepts "planar"/"2d" and "full"/"3d"; throws ValidationError otherwise.
Geometry parse_geometry(std::string_view name);

/// Dimension of the prior's support as a real vector space (2 or 3).
inline int ambient_dimension(Geometry g) {
    return g == Geometry::Planar ? 2 : 3;
}

/// Plain 3-vector. Not normalized.
struct Vec3 {
    double x = 0;
    double y = 0;
    double z = 0;

    double operator[](int i) const {
        return i == 0 ? x : (i == 1 ? y : z);
    }
    Vec3 &operator+=(const Vec3 &o) {
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
    Vec3 &operator-=(const Vec3 &o) {
        x -= o.x;
        y -= o.y;
        z -= o.z;
        return *this;
    }
    Vec3 &operator*=(double s) {
        x *= s;
        y *= s;
        z *= s;
        return *this;
    }
    friend Vec3 operator+(Vec3 a, const Vec3 &b) {
        return a += b;
    }
    friend Vec3 operator-(Vec3 a, const Vec3 &b) {
        return a -= b;
    }
    friend Vec3 operator-(const Vec3 &a) {
        return {-a.x, -a.y, -a.z};
    }
    friend Vec3 operator*(double s, Vec3 a) {
        return a *= s;
    }
    friend Vec3 operator*(Vec3 a, double s) {
        return a *= s;
    }
    friend Vec3 operator/(Vec3 a, double s) {
        return a *= 1.0 / s;
    }
    bool operator==(const Vec3 &) const = default;
};

inline double dot(const Vec3 &a, const Vec3 &b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}
inline Vec3 cross(const Vec3 &a, const Vec3 &b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3 &a) {
    return std::sqrt(dot(a, a));
}

/// Unit vector on the Bloch sphere.
///
/// Construction normalizes; the zero vector is rejected. Planar vectors are
/// built through in_geometry(), which also zeroes the z component.
class BlochVector {
   public:
    BlochVector() : v_{0, 0, 1} {
    }
    /// Normalizes `v`. Throws ValidationError if |v| is zero or not finite.
    explicit BlochVector(const Vec3 &v);
    BlochVector(double x, double y, double z) : BlochVector(Vec3{x, y, z}) {
    }

    /// Builds a unit vector and, for Planar, projects it onto the xy-plane
    /// first. Throws ValidationError if the projection vanishes.
    static BlochVector in_geometry(Geometry g, const Vec3 &v);

    const Vec3 &vec() const {
        return v_;
    }
    operator const Vec3 &() const {
        return v_;
    }
    double x() const {
        return v_.x;
    }
    double y() const {
        return v_.y;
    }
    double z() const {
        return v_.z;
    }
    double operator[](int i) const {
        return v_[i];
    }
    BlochVector operator-() const {
        BlochVector r;
        r.v_ = -v_;
        return r;
    }
    bool operator==(const BlochVector &) const = default;

    /// True when the vector satisfies the geometry's support constraint.
    bool fits(Geometry g) const {
        return g == Geometry::Full || v_.z == 0.0;
    }

   private:
    Vec3 v_;
};

/// Canonical axes e1, e2, e3.
BlochVector axis(int index);

/// Spherical angles of a Bloch vector. `polar` in [0, pi], `azimuth` in (-pi, pi].
struct SphericalAngles {
    double polar = 0;
    double azimuth = 0;
};

/// Full: the usual spherical parametrization. Planar: `polar` is ignored and the
/// vector is (cos azimuth, sin azimuth, 0).
BlochVector angles_to_vector(Geometry g, double polar, double azimuth);
/// Inverse of angles_to_vector. The azimuth is 0 at the poles. Planar results
/// carry polar = pi/2.
SphericalAngles vector_to_angles(Geometry g, const BlochVector &v);

/// Some unit vector orthogonal to `v`, chosen deterministically.
Vec3 any_orthogonal(const Vec3 &v);

/// Rotation matrix, row-major.
struct Rotation {
    std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

    Vec3 apply(const Vec3 &v) const {
        return {m[0] * v.x + m[1] * v.y + m[2] * v.z, m[3] * v.x + m[4] * v.y + m[5] * v.z,
                m[6] * v.x + m[7] * v.y + m[8] * v.z};
    }
    BlochVector apply(const BlochVector &v) const {
        return BlochVector(apply(v.vec()));
    }
    /// Rotation by `angle` about the unit `axis` (Rodrigues).
    static Rotation about(const Vec3 &axis, double angle);
};

}  // namespace locc

#endif

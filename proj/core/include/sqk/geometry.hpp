// Copyright 2026 The sqkernel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file geometry.hpp
 * @brief Small fixed-size vector and matrix primitives used across the library.
 */

#pragma once

#include <cmath>
#include <stdexcept>

namespace sqk {

/** @brief A 2D vector with double precision components. */
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2() = default;
    constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

    constexpr Vec2 operator+(const Vec2 &o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(const Vec2 &o) const { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }

    constexpr double dot(const Vec2 &o) const { return x * o.x + y * o.y; }
    double norm() const { return std::hypot(x, y); }

    /// Unit vector in the same direction. Throws when the norm is below eps.
    Vec2 normalized(double eps = 1e-300) const {
        const double n = norm();
        if (n < eps) {
            throw std::runtime_error("Vec2::normalized: vector norm is numerically zero");
        }
        return {x / n, y / n};
    }
};

constexpr Vec2 operator*(double s, const Vec2 &v) { return v * s; }

/** @brief A dense 2x2 matrix, row major: [[a, b], [c, d]]. */
struct Mat2 {
    double a = 0.0; ///< row 0, col 0
    double b = 0.0; ///< row 0, col 1
    double c = 0.0; ///< row 1, col 0
    double d = 0.0; ///< row 1, col 1

    constexpr Mat2() = default;
    constexpr Mat2(double a_, double b_, double c_, double d_) : a(a_), b(b_), c(c_), d(d_) {}

    static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static constexpr Mat2 diagonal(double d0, double d1) { return {d0, 0.0, 0.0, d1}; }

    constexpr double det() const { return a * d - b * c; }
    constexpr double trace() const { return a + d; }
    constexpr Mat2 transposed() const { return {a, c, b, d}; }

    constexpr Mat2 operator+(const Mat2 &o) const { return {a + o.a, b + o.b, c + o.c, d + o.d}; }
    constexpr Mat2 operator*(double s) const { return {a * s, b * s, c * s, d * s}; }
    constexpr Mat2 operator*(const Mat2 &o) const {
        return {a * o.a + b * o.c, a * o.b + b * o.d, c * o.a + d * o.c, c * o.b + d * o.d};
    }
    constexpr Vec2 operator*(const Vec2 &v) const { return {a * v.x + b * v.y, c * v.x + d * v.y}; }

    /// Matrix inverse. Throws when the determinant is numerically zero.
    Mat2 inverse() const {
        const double det_ = det();
        if (!(std::abs(det_) > 1e-300)) {
            throw std::runtime_error("Mat2::inverse: matrix is numerically singular");
        }
        const double inv = 1.0 / det_;
        return {d * inv, -b * inv, -c * inv, a * inv};
    }

    /// Quadratic form v^T M v.
    constexpr double quadratic(const Vec2 &v) const {
        return v.x * (a * v.x + b * v.y) + v.y * (c * v.x + d * v.y);
    }
};

/** @brief Counterclockwise rotation matrix R(angle). */
inline Mat2 rotation(double angle) {
    const double co = std::cos(angle);
    const double si = std::sin(angle);
    return {co, -si, si, co};
}

/** @brief A sample in the 2D data plane. */
struct Point2 {
    double x1 = 0.0;
    double x2 = 0.0;

    constexpr Point2() = default;
    constexpr Point2(double x1_, double x2_) : x1(x1_), x2(x2_) {}

    constexpr Vec2 vec() const { return {x1, x2}; }
    constexpr bool operator==(const Point2 &o) const = default;
};

/// Displacement from b to a in the data plane.
constexpr Vec2 operator-(const Point2 &a, const Point2 &b) { return {a.x1 - b.x1, a.x2 - b.x2}; }

/// Translate a point by a data-plane vector.
constexpr Point2 operator+(const Point2 &p, const Vec2 &v) { return {p.x1 + v.x, p.x2 + v.y}; }

} // namespace sqk

#pragma once
/**
 * @file geometry.hpp
 * @brief Planar vector type and the handful of operations the controllers use.
 *
 * Everything here is a value-semantic free function; no allocation, no state.
 */

#include <cmath>

namespace linemarch {

/// Norms below this are treated as "no direction" by unit().
inline constexpr double kZeroNorm = 1e-12;

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2() = default;
    constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

    constexpr Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    constexpr Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Vec2& operator+=(const Vec2& o) {
        x += o.x;
        y += o.y;
        return *this;
    }
    constexpr Vec2& operator-=(const Vec2& o) {
        x -= o.x;
        y -= o.y;
        return *this;
    }

    constexpr bool operator==(const Vec2&) const = default;

    double norm() const { return std::hypot(x, y); }
    bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

constexpr Vec2 operator*(double s, const Vec2& v) { return v * s; }

constexpr double inner(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }

/// x / ||x||, or the zero vector when ||x|| < kZeroNorm.
inline Vec2 unit(const Vec2& v) {
    const double n = v.norm();
    if (n < kZeroNorm) return {};
    return {v.x / n, v.y / n};
}

/// Anticlockwise rotation by theta radians.
inline Vec2 rotate(double theta, const Vec2& v) {
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    return {c * v.x - s * v.y, s * v.x + c * v.y};
}

/// Quarter turn anticlockwise, computed exactly (no trig round-off).
constexpr Vec2 perp(const Vec2& v) { return {-v.y, v.x}; }

inline double distance(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

}  // namespace linemarch

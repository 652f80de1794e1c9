#pragma once
/**
 * @file vec2.hpp
 * @brief 2-D vector used for every position and velocity in the swarm.
 *
 * All arithmetic is 64-bit floating point. Zero-length tests use
 * kZeroLength so that normalization never produces NaN.
 */

#include <cmath>
#include <ostream>

namespace trustswarm {

/// Magnitudes below this are treated as the zero vector.
inline constexpr double kZeroLength = 1e-12;

struct Vec2 {
    double x{0.0};
    double y{0.0};

    constexpr Vec2() = default;
    constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

    constexpr Vec2 operator+(const Vec2& r) const { return {x + r.x, y + r.y}; }
    constexpr Vec2 operator-(const Vec2& r) const { return {x - r.x, y - r.y}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }

    constexpr Vec2& operator+=(const Vec2& r) {
        x += r.x;
        y += r.y;
        return *this;
    }
    constexpr Vec2& operator-=(const Vec2& r) {
        x -= r.x;
        y -= r.y;
        return *this;
    }
    constexpr Vec2& operator*=(double s) {
        x *= s;
        y *= s;
        return *this;
    }

    constexpr bool operator==(const Vec2&) const = default;

    constexpr double dot(const Vec2& r) const { return x * r.x + y * r.y; }
    double norm() const { return std::hypot(x, y); }
    constexpr double norm_squared() const { return x * x + y * y; }
    bool is_finite() const { return std::isfinite(x) && std::isfinite(y); }
};

constexpr Vec2 operator*(double s, const Vec2& v) { return v * s; }

inline double distance(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

inline std::ostream& operator<<(std::ostream& os, const Vec2& v) {
    return os << '(' << v.x << ", " << v.y << ')';
}

/// Unit vector in the direction of v, or the zero vector when |v| < kZeroLength.
inline Vec2 normalize(const Vec2& v) {
    const double n = v.norm();
    if (n < kZeroLength) {
        return {};
    }
    return v / n;
}

/// Rescales v to magnitude max_len when it is longer; heading is preserved.
inline Vec2 clamp_magnitude(const Vec2& v, double max_len) {
    const double n = v.norm();
    if (n <= max_len || n < kZeroLength) {
        return v;
    }
    Vec2 out = v * (max_len / n);
    // rounding in the rescale can land one ulp above the cap
    while (out.norm() > max_len) {
        out *= std::nextafter(1.0, 0.0);
    }
    return out;
}

}  // namespace trustswarm

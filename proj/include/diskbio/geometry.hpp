#pragma once

#include <cmath>
#include <stdexcept>

namespace diskbio {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    Vec2() = default;
    Vec2(double x_, double y_) : x(x_), y(y_) {}

    Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
    Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
    Vec2 operator*(double s) const { return {x * s, y * s}; }
    double dot(const Vec2& o) const { return x * o.x + y * o.y; }
    double norm() const { return std::hypot(x, y); }
};

inline Vec2 operator*(double s, const Vec2& v) { return v * s; }

inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }

/// Rotation by +90 degrees, i.e. n x v for the upward normal n = e3.
inline Vec2 rot90(const Vec2& v) { return {-v.y, v.x}; }

/// Point on the disk in polar coordinates, r >= 0, theta in radians.
struct PolarPoint {
    double r = 0.0;
    double theta = 0.0;

    PolarPoint() = default;
    PolarPoint(double r_, double theta_) : r(r_), theta(theta_) {
        if (r < 0.0) throw std::domain_error("PolarPoint: negative radius");
    }

    Vec2 cart() const { return {r * std::cos(theta), r * std::sin(theta)}; }
};

inline PolarPoint to_polar(const Vec2& v) { return PolarPoint(v.norm(), std::atan2(v.y, v.x)); }

inline double distance(const PolarPoint& a, const PolarPoint& b) {
    // sqrt(ra^2 + rb^2 - 2 ra rb cos dtheta), but the Cartesian route is
    // just as accurate and avoids the cancellation-prone cosine form.
    return (a.cart() - b.cart()).norm();
}

/// Edge-distance weight omega_a(x) = sqrt(a^2 - r^2) on the disk of radius a.
inline double omega(double a, double r) {
    double s = (a - r) * (a + r);
    return s > 0.0 ? std::sqrt(s) : 0.0;
}

inline double omega(const PolarPoint& x) { return omega(1.0, x.r); }

} // namespace diskbio

#pragma once

#include <cmath>

namespace cyclesight {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend constexpr Vec2 operator+(Vec2 p, Vec2 q) { return {p.x + q.x, p.y + q.y}; }
    friend constexpr Vec2 operator-(Vec2 p, Vec2 q) { return {p.x - q.x, p.y - q.y}; }
    friend constexpr Vec2 operator*(double s, Vec2 p) { return {s * p.x, s * p.y}; }
    friend constexpr bool operator==(Vec2, Vec2) = default;

    constexpr double dot(Vec2 q) const { return x * q.x + y * q.y; }
    double norm() const { return std::hypot(x, y); }
};

/// A point [x : y] of the real projective line, standing for x/y.
/// Stored with unit norm and first nonzero coordinate positive, so two
/// representatives of the same point compare equal up to rounding.
class ProjPoint {
public:
    /// Throws Error(DegeneratePoint) when both coordinates vanish.
    ProjPoint(double x, double y);

    static ProjPoint infinity() { return {1.0, 0.0}; }
    static ProjPoint zero() { return {0.0, 1.0}; }

    double x() const { return x_; }
    double y() const { return y_; }
    Vec2 vec() const { return {x_, y_}; }

    /// sin of the angle between representatives; 0 iff the points coincide.
    double distance(const ProjPoint& other) const { return std::abs(x_ * other.y_ - y_ * other.x_); }

    /// Angle on the unit circle of this point's Cayley image, in (-pi, pi].
    double disk_angle() const;
    /// Inverse of disk_angle.
    static ProjPoint from_disk_angle(double phi);

private:
    double x_;
    double y_;
};

}  // namespace cyclesight

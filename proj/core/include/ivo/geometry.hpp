#pragma once

#include <cmath>

namespace ivo {

/// Planar vector. Used for positions (m), velocities and velocity changes (m/s).
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

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
  constexpr Vec2& operator*=(double s) {
    x *= s;
    y *= s;
    return *this;
  }

  friend constexpr bool operator==(const Vec2&, const Vec2&) = default;
};

constexpr Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
constexpr Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
constexpr Vec2 operator-(const Vec2& a) { return {-a.x, -a.y}; }
constexpr Vec2 operator*(Vec2 a, double s) { return a *= s; }
constexpr Vec2 operator*(double s, Vec2 a) { return a *= s; }
constexpr Vec2 operator/(const Vec2& a, double s) { return {a.x / s, a.y / s}; }

constexpr double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }

/// z-component of the 3D cross product; positive when b is counter-clockwise of a.
constexpr double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }

constexpr double squared_norm(const Vec2& a) { return dot(a, a); }

inline double norm(const Vec2& a) { return std::hypot(a.x, a.y); }

inline bool is_finite(const Vec2& a) { return std::isfinite(a.x) && std::isfinite(a.y); }

/// Returns `a` unchanged if its length is within `max_len`, otherwise `a` rescaled
/// to length `max_len` along the same direction.
inline Vec2 clamp_norm(const Vec2& a, double max_len) {
  const double len = norm(a);
  if (len <= max_len) {
    return a;
  }
  return a * (max_len / len);
}

inline Vec2 rotated(const Vec2& a, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return {c * a.x - s * a.y, s * a.x + c * a.y};
}

/// Signed angle from `from` to `to` in (-pi, pi]; negative is clockwise.
inline double signed_angle(const Vec2& from, const Vec2& to) {
  return std::atan2(cross(from, to), dot(from, to));
}

}  // namespace ivo

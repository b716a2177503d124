#pragma once

#include <array>
#include <cmath>

namespace roflab {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2& operator+=(const Vec2& o) { x += o.x; y += o.y; return *this; }
  constexpr Vec2& operator-=(const Vec2& o) { x -= o.x; y -= o.y; return *this; }
  constexpr Vec2& operator*=(double s) { x *= s; y *= s; return *this; }
};

constexpr Vec2 operator+(Vec2 a, const Vec2& b) { return a += b; }
constexpr Vec2 operator-(Vec2 a, const Vec2& b) { return a -= b; }
constexpr Vec2 operator-(const Vec2& a) { return {-a.x, -a.y}; }
constexpr Vec2 operator*(double s, Vec2 a) { return a *= s; }
constexpr Vec2 operator*(Vec2 a, double s) { return a *= s; }
constexpr Vec2 operator/(Vec2 a, double s) { return {a.x / s, a.y / s}; }
constexpr bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }

constexpr double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
/// z-component of the 3D cross product.
constexpr double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Vec2& a) { return std::hypot(a.x, a.y); }
/// Rotation by -90 degrees: for a counter-clockwise boundary tangent this is the outward normal.
constexpr Vec2 perp_cw(const Vec2& a) { return {a.y, -a.x}; }

/// Column-major 2x2 matrix: cols[0], cols[1].
struct Mat2 {
  Vec2 c0;
  Vec2 c1;

  constexpr Vec2 operator*(const Vec2& v) const { return c0 * v.x + c1 * v.y; }
  constexpr double det() const { return cross(c0, c1); }
  constexpr Mat2 transposed() const { return {{c0.x, c1.x}, {c0.y, c1.y}}; }
};

using Triangle = std::array<Vec2, 3>;

constexpr double signed_area(const Vec2& a, const Vec2& b, const Vec2& c) {
  return 0.5 * cross(b - a, c - a);
}

}  // namespace roflab

#pragma once

#include <array>
#include <span>
#include <vector>

#include "roflab/geometry.hpp"

namespace roflab {

/// Straight discontinuity line base + R*tangent with unit normal.
struct JumpLine {
  Vec2 base;
  Vec2 tangent;
  Vec2 normal;

  /// Signed distance (x - base).normal.
  double side_of(const Vec2& x) const { return dot(x - base, normal); }
};

/// Line through base with unit normal n; tangent is n rotated by +90 degrees.
JumpLine make_jump_line(const Vec2& base, const Vec2& normal);
/// The same line with tangent and normal negated.
JumpLine flipped(const JumpLine& line);

struct QuadRule1D {
  std::vector<double> nodes;    // on [0, 1]
  std::vector<double> weights;  // sum to 1
};

/// n-point Gauss-Legendre rule on [0,1], exact for degree 2n-1.
const QuadRule1D& gauss_legendre(int n);

struct QuadRuleTri {
  std::vector<std::array<double, 3>> bary;
  std::vector<double> weights;  // sum to 1
};

/// Symmetric rule on triangles exact for polynomials of total degree `degree`.
/// Degree <= 6 uses the 12-point Dunavant rule; higher degrees use a collapsed
/// Gauss product rule.
const QuadRuleTri& triangle_rule(int degree);

inline constexpr int kDefaultSegmentPoints = 5;
inline constexpr int kDefaultTriangleDegree = 6;

/// Parameters s in (0,1) at which the segment a + s(b-a) crosses one of the lines,
/// sorted and deduplicated. Crossings within 1e-12 of an endpoint are ignored.
std::vector<double> segment_cuts(const Vec2& a, const Vec2& b, std::span<const JumpLine> lines);

/// Clips the triangle at all lines and returns a fan triangulation of the pieces.
std::vector<Triangle> split_triangle(const Triangle& tri, std::span<const JumpLine> lines);

/// Fraction of segment a-b lying in the halfplane (x-base).n < 0. A segment
/// lying exactly on the line counts half.
double clip_side_fraction(const Vec2& a, const Vec2& b, const JumpLine& line);

/// Mean of f over the segment a-b with `points` Gauss points per piece.
template <class F>
auto segment_average(F&& f, const Vec2& a, const Vec2& b, std::span<const JumpLine> lines = {},
                     int points = kDefaultSegmentPoints) {
  const QuadRule1D& rule = gauss_legendre(points);
  std::vector<double> breaks{0.0};
  for (double s : segment_cuts(a, b, lines)) breaks.push_back(s);
  breaks.push_back(1.0);
  using Value = decltype(f(a));
  Value sum{};
  for (std::size_t p = 0; p + 1 < breaks.size(); ++p) {
    const double s0 = breaks[p];
    const double len = breaks[p + 1] - s0;
    Value part{};
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double s = s0 + len * rule.nodes[q];
      part = part + rule.weights[q] * f(a + s * (b - a));
    }
    sum = sum + len * part;
  }
  return sum;
}

template <class F>
auto triangle_integral(F&& f, const Triangle& tri, std::span<const JumpLine> lines = {},
                       int degree = kDefaultTriangleDegree) {
  const QuadRuleTri& rule = triangle_rule(degree);
  using Value = decltype(f(tri[0]));
  Value sum{};
  auto integrate = [&](const Triangle& t) {
    const double area = std::abs(signed_area(t[0], t[1], t[2]));
    Value part{};
    for (std::size_t q = 0; q < rule.weights.size(); ++q) {
      const auto& l = rule.bary[q];
      const Vec2 x = l[0] * t[0] + l[1] * t[1] + l[2] * t[2];
      part = part + rule.weights[q] * f(x);
    }
    sum = sum + area * part;
  };
  if (lines.empty()) {
    integrate(tri);
  } else {
    for (const Triangle& piece : split_triangle(tri, lines)) integrate(piece);
  }
  return sum;
}

}  // namespace roflab

#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "roflab/quadrature.hpp"

using namespace roflab;

namespace {

// Exact integral of x^a y^b over the reference triangle: a! b! / (a+b+2)!.
double monomial_integral(int a, int b) {
  return std::tgamma(a + 1.0) * std::tgamma(b + 1.0) / std::tgamma(a + b + 3.0);
}

double power(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

const Triangle kRef{Vec2{0.0, 0.0}, Vec2{1.0, 0.0}, Vec2{0.0, 1.0}};

}  // namespace

TEST_CASE("Gauss-Legendre rules integrate monomials of degree 2n-1") {
  for (int n = 1; n <= 20; ++n) {
    const QuadRule1D& g = gauss_legendre(n);
    for (int q = 0; q <= 2 * n - 1; ++q) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += g.weights[i] * power(g.nodes[i], q);
      CHECK(std::abs(s - 1.0 / (q + 1)) <= 1e-13);
    }
  }
}

TEST_CASE("segment averages") {
  CHECK(segment_average([](const Vec2&) { return 3.25; }, {0, 0}, {1, 2}) == doctest::Approx(3.25).epsilon(1e-15));
  for (int n = 1; n <= 4; ++n)
    CHECK(segment_average([](const Vec2& x) { return 7.0; }, {0, 0}, {1, 0}, {}, n) == doctest::Approx(7.0));
  CHECK(segment_average([](const Vec2& x) { return x.x; }, {0, 0}, {1, 0}, {}, 2) == doctest::Approx(0.5));
  // Degree-(2n-1) exactness on a tilted segment: mean of s^q along (0,0)-(2,1) in x is 2^q/(q+1).
  for (int q = 0; q <= 9; ++q) {
    const double v = segment_average([&](const Vec2& x) { return power(x.x, q); }, {0, 0}, {2, 1}, {}, 5);
    CHECK(std::abs(v - power(2.0, q) / (q + 1)) <= 1e-13 * power(2.0, q));
  }
}

TEST_CASE("split segment average of a sign function cancels at the midpoint") {
  const JumpLine line = make_jump_line({0.5, 0.0}, {1.0, 0.0});
  const JumpLine lines[] = {line};
  const auto sign = [&](const Vec2& x) { return line.side_of(x) > 0.0 ? 1.0 : -1.0; };
  CHECK(std::abs(segment_average(sign, {0, 0}, {1, 0}, lines)) <= 1e-15);
  const JumpLine off = make_jump_line({0.3, 0.0}, {1.0, 0.0});
  const JumpLine offs[] = {off};
  const auto sign_off = [&](const Vec2& x) { return off.side_of(x) > 0.0 ? 1.0 : -1.0; };
  CHECK(segment_average(sign_off, {0, 0}, {1, 0}, offs) == doctest::Approx(0.4).epsilon(1e-14));
}

TEST_CASE("triangle rules integrate monomials exactly") {
  for (int degree : {1, 4, 6, 8, 11, 14}) {
    const int max_q = std::max(degree, 6);
    for (int a = 0; a <= max_q; ++a) {
      for (int b = 0; a + b <= max_q; ++b) {
        const double v = triangle_integral([&](const Vec2& x) { return power(x.x, a) * power(x.y, b); }, kRef, {}, degree);
        CHECK(std::abs(v - monomial_integral(a, b)) <= 1e-13);
      }
    }
  }
  CHECK(triangle_integral([](const Vec2&) { return 1.0; }, kRef) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(triangle_integral([](const Vec2& x) { return x.x * x.x; }, kRef) == doctest::Approx(1.0 / 12.0).epsilon(1e-14));
}

TEST_CASE("split integration of smooth functions equals unsplit") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const Triangle tri{Vec2{u(rng), u(rng)}, Vec2{u(rng), u(rng)}, Vec2{u(rng), u(rng)}};
    if (std::abs(signed_area(tri[0], tri[1], tri[2])) < 1e-3) continue;
    const JumpLine lines[] = {make_jump_line({u(rng), u(rng)}, {u(rng), u(rng)}),
                              make_jump_line({u(rng), u(rng)}, {u(rng), u(rng)})};
    const auto f = [](const Vec2& x) { return 1.0 + x.x * x.x * x.y - 2.0 * x.y * x.y * x.y + x.x; };
    const double whole = triangle_integral(f, tri);
    const double split = triangle_integral(f, tri, lines);
    CHECK(std::abs(whole - split) <= 1e-12);
    const double area = std::abs(signed_area(tri[0], tri[1], tri[2]));
    double pieces = 0.0;
    for (const Triangle& p : split_triangle(tri, lines)) pieces += std::abs(signed_area(p[0], p[1], p[2]));
    CHECK(std::abs(pieces - area) <= 1e-13);
  }
}

TEST_CASE("indicator on a triangle bisected through a vertex") {
  // Line through vertex (0,1) and the midpoint (0.5,0) of the opposite side.
  const Vec2 dir = Vec2{0.5, 0.0} - Vec2{0.0, 1.0};
  const JumpLine line = make_jump_line({0.0, 1.0}, perp_cw(dir));
  const JumpLine lines[] = {line};
  const auto chi = [&](const Vec2& x) { return line.side_of(x) > 0.0 ? 1.0 : 0.0; };
  CHECK(triangle_integral(chi, kRef, lines) == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("clip_side_fraction") {
  const Vec2 a{0.0, 0.0}, b{1.0, 0.0};
  // Side entirely in the negative halfplane.
  CHECK(clip_side_fraction(a, b, make_jump_line({2.0, 0.0}, {1.0, 0.0})) == 1.0);
  CHECK(clip_side_fraction(a, b, make_jump_line({-2.0, 0.0}, {1.0, 0.0})) == 0.0);
  CHECK(clip_side_fraction(a, b, make_jump_line({0.5, 0.0}, {1.0, 0.0})) == 0.5);
  // Vertical line x = 0.25 with normal +e1: the part x < 0.25 is a quarter.
  const JumpLine l = make_jump_line({0.25, 3.0}, {1.0, 0.0});
  CHECK(clip_side_fraction(a, b, l) == doctest::Approx(0.25));
  CHECK(clip_side_fraction(a, b, flipped(l)) == doctest::Approx(0.75));
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const Vec2 p{u(rng), u(rng)}, q{u(rng), u(rng)};
    const JumpLine line = make_jump_line({u(rng), u(rng)}, {u(rng), u(rng)});
    CHECK(clip_side_fraction(p, q, line) + clip_side_fraction(p, q, flipped(line)) == doctest::Approx(1.0));
  }
  // Segment on the line counts half on either side.
  const JumpLine on = make_jump_line({0.0, 0.0}, {0.0, 1.0});
  CHECK(clip_side_fraction(a, b, on) + clip_side_fraction(a, b, flipped(on)) == 1.0);
}

TEST_CASE("jump line frame") {
  const JumpLine l = make_jump_line({0.1, 0.2}, {3.0, 4.0});
  CHECK(std::abs(norm(l.normal) - 1.0) <= 1e-14);
  CHECK(std::abs(norm(l.tangent) - 1.0) <= 1e-14);
  CHECK(std::abs(dot(l.normal, l.tangent)) <= 1e-14);
  CHECK_THROWS_AS(make_jump_line({0, 0}, {0, 0}), std::invalid_argument);
}

TEST_CASE("cuts near endpoints are ignored") {
  const JumpLine lines[] = {make_jump_line({1e-14, 0.0}, {1.0, 0.0})};
  CHECK(segment_cuts({0, 0}, {1, 0}, lines).empty());
  const JumpLine mid[] = {make_jump_line({0.5, 0.0}, {1.0, 0.0})};
  CHECK(segment_cuts({0, 0}, {1, 0}, mid).size() == 1);
}

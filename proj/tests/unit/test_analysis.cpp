#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

#include "roflab/analysis.hpp"

using namespace roflab;

namespace {

struct CutSample {
  Triangle tri;
  JumpLine line;
  Vec2 za;
  Vec2 zb;
};

// Random triangle, random line through an interior point, z_a - z_b tangential.
CutSample random_cut(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> w(0.05, 1.0);
  std::uniform_real_distribution<double> ang(0.0, 2 * std::numbers::pi);
  for (;;) {
    CutSample c;
    c.tri = {Vec2{u(rng), u(rng)}, Vec2{u(rng), u(rng)}, Vec2{u(rng), u(rng)}};
    const double area = signed_area(c.tri[0], c.tri[1], c.tri[2]);
    if (std::abs(area) < 0.05) continue;
    if (area < 0) std::swap(c.tri[1], c.tri[2]);
    const double l0 = w(rng), l1 = w(rng), l2 = w(rng);
    const Vec2 p = (l0 * c.tri[0] + l1 * c.tri[1] + l2 * c.tri[2]) / (l0 + l1 + l2);
    const double a = ang(rng);
    c.line = make_jump_line(p, {std::cos(a), std::sin(a)});
    c.zb = {u(rng), u(rng)};
    c.za = c.zb + 2.0 * u(rng) * c.line.tangent;
    if (cut_geometries(c.tri, c.line).empty()) continue;
    return c;
  }
}

Vec2 oracle_interpolant(const CutSample& c) {
  const Mesh m({c.tri[0], c.tri[1], c.tri[2]}, {{0, 1, 2}});
  const std::vector<JumpLine> lines{c.line};
  const auto z = [&](const Vec2& x) { return c.line.side_of(x) > 0.0 ? c.za : c.zb; };
  return rt_interpolate(m, z, lines).barycenter_value(0);
}

}  // namespace

TEST_CASE("eoc examples") {
  const std::vector<double> h{0.4, 0.2, 0.1, 0.05};
  std::vector<double> e;
  for (double v : h) e.push_back(3.0 * std::sqrt(v));
  const auto r = eoc(e, h);
  CHECK(std::isnan(r[0]));
  for (std::size_t k = 1; k < r.size(); ++k) CHECK(std::abs(r[k] - 0.5) <= 1e-12);
  CHECK(std::abs(mean_of_last(r, 3) - 0.5) <= 1e-12);
  CHECK(std::isnan(mean_of_last(r, 4)));

  const std::vector<double> e2{1.0, 0.25};
  const std::vector<double> h2{1.0, 0.5};
  CHECK(eoc(e2, h2)[1] == doctest::Approx(2.0));
  const std::vector<double> zero{1.0, 0.0};
  CHECK(std::isnan(eoc(zero, h2)[1]));
  CHECK_THROWS_AS(eoc(e2, h), std::invalid_argument);
}

TEST_CASE("fit_exponent recovers power laws") {
  const std::vector<double> h{0.5, 0.25, 0.125, 0.0625};
  std::vector<double> v;
  for (double x : h) v.push_back(0.7 * std::pow(x, 1.3));
  CHECK(fit_exponent(h, v) == doctest::Approx(1.3).epsilon(1e-12));
  // Entries at or below 1e-12 are dropped from the fit.
  v[0] = 0.0;
  CHECK(fit_exponent(h, v) == doctest::Approx(1.3).epsilon(1e-12));
}

TEST_CASE("midpoint error") {
  const Mesh m = square_mesh(2);
  CrFunction u(m);
  CHECK(midpoint_error_sq([](const Vec2&) { return 0.0; }, u) == 0.0);
  CHECK(midpoint_error_sq([](const Vec2&) { return 2.0; }, u) == doctest::Approx(16.0));
  // CR interpolant of an affine function is exact at barycenters.
  const auto f = [](const Vec2& x) { return 1.0 + 2.0 * x.x - x.y; };
  CHECK(midpoint_error_sq(f, cr_interpolate(m, f)) <= 1e-26);
}

TEST_CASE("interpolant sup norm") {
  const Mesh m = square_mesh(3);
  const Rt0Field z = rt_interpolate(m, [](const Vec2&) { return Vec2{1.0, 0.0}; });
  const InterpNorm n = interp_sup_norm(z);
  CHECK(n.sup_norm == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(hoelder_kappa(n) <= 1e-14);
  CHECK(n.excess.size() == static_cast<std::size_t>(m.num_triangles()));
  CHECK(hoelder_kappa(InterpNorm{1.25, {}}) == 0.25);
  CHECK(hoelder_kappa(InterpNorm{0.5, {}}) == 0.0);
}

TEST_CASE("Hoelder chain on smooth fields") {
  const Mesh m = square_mesh(3);
  const VectorField fields[] = {
      [](const Vec2& x) { return Vec2{std::cos(x.y), std::sin(x.y)}; },
      [](const Vec2& x) { return 0.5 * Vec2{x.x * x.x - x.y, x.x * x.y}; },
      [](const Vec2& x) { return Vec2{std::sin(3 * x.x), std::cos(2 * x.y)} / std::sqrt(2.0); },
  };
  for (const auto& f : fields) CHECK(hoelder_chain_defect(rt_interpolate(m, f)) <= 1e-12);
}

TEST_CASE("modulus minimizer") {
  const Triangle tri{Vec2{0, 0}, Vec2{1, 0}, Vec2{0, 1}};
  // a + c (x - x_T) vanishes at x = x_T - a / c when that point is inside.
  const Vec2 xt{1.0 / 3, 1.0 / 3};
  const Vec2 x = modulus_minimizer(tri, {0.1, 0.05}, -1.0);
  CHECK(norm(x - (xt + Vec2{0.1, 0.05})) <= 1e-12);
  // c = 0: any point is a minimizer, but it must lie in T.
  CHECK(triangle_contains(tri, modulus_minimizer(tri, {1.0, 2.0}, 0.0)));
  // Minimizer outside: clamp to the boundary.
  const Vec2 y = modulus_minimizer(tri, {-5.0, -5.0}, 1.0);
  CHECK(triangle_contains(tri, y));
  CHECK(std::abs(y.x + y.y - 1.0) <= 1e-12);
}

TEST_CASE("closed cut-element formula against split quadrature") {
  std::mt19937_64 rng(11);
  double worst = 0.0;
  for (int i = 0; i < 500; ++i) {
    const CutSample c = random_cut(rng);
    const Vec2 oracle = oracle_interpolant(c);
    for (const CutGeometry& g : cut_geometries(c.tri, c.line))
      worst = std::max(worst, norm(cut_element_interpolant(c.za, c.zb, g) - oracle));
    worst = std::max(worst, norm(cut_element_interpolant(c.za, c.zb, c.line, c.tri) - oracle));
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("cut-element special cases") {
  const Triangle tri{Vec2{0, 0}, Vec2{1, 0}, Vec2{0, 1}};
  // Line x = 0.3 crosses the bottom side and the hypotenuse; the left side is uncut.
  const JumpLine line = make_jump_line({0.3, 0.0}, {1.0, 0.0});
  const Vec2 zb{0.2, 0.1};
  const Vec2 za = zb + 0.8 * line.tangent;
  for (const CutGeometry& g : cut_geometries(tri, line)) {
    CHECK(g.n2.x == doctest::Approx(-1.0));
    if (std::abs(dot(g.line.tangent, g.n1)) <= 1e-15) CHECK(norm(cut_element_interpolant(za, zb, g) - zb) <= 1e-15);
  }
  // rho = 1 collapses to z_b: feed a synthetic geometry.
  CutGeometry g = cut_geometries(tri, line).front();
  g.rho = 1.0;
  const Vec2 res = cut_element_interpolant(za, zb, g);
  CHECK(norm(res - (g.swapped ? za : zb)) == 0.0);

  CHECK_THROWS_AS(cut_element_interpolant(za + Vec2{1e-3, 0.0}, zb, line, tri), std::invalid_argument);
  CHECK_THROWS_AS(cut_element_interpolant(za, zb, make_jump_line({2.0, 0.0}, {1.0, 0.0}), tri),
                  std::invalid_argument);
  const Triangle flat{Vec2{0, 0}, Vec2{1, 0}, Vec2{2, 0}};
  CHECK_THROWS_AS(cut_element_interpolant(za, zb, line, flat), std::invalid_argument);
}

TEST_CASE("cut geometry orientation") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 200; ++i) {
    const CutSample c = random_cut(rng);
    for (const CutGeometry& g : cut_geometries(c.tri, c.line)) {
      const Vec2& a = c.tri[(g.s2 + 1) % 3];
      const Vec2& b = c.tri[(g.s2 + 2) % 3];
      CHECK(g.line.side_of(a) <= 1e-14);
      CHECK(g.line.side_of(b) <= 1e-14);
      CHECK(g.rho > 0.0);
      CHECK(g.rho < 1.0);
      CHECK(std::abs(norm(g.n1) - 1.0) <= 1e-14);
    }
  }
}

TEST_CASE("classifier on single elements") {
  const Triangle tri{Vec2{0, 0}, Vec2{1, 0}, Vec2{0, 1}};
  const Vec2 z{0.3, 0.0};
  // Line through two vertices.
  CHECK(classify_cut(z, z, make_jump_line({0, 0}, {std::sqrt(0.5), -std::sqrt(0.5)}), tri, 0.01) !=
        CutCase::Uncut);
  CHECK(classify_cut(z, z, make_jump_line({0, 0}, std::sqrt(0.5) * Vec2{1.0, 1.0}), tri, 0.01) ==
        CutCase::Uncut);
  CHECK(classify_cut(z, z, make_jump_line({1, 0}, std::sqrt(0.5) * Vec2{1.0, 1.0}), tri, 0.01) ==
        CutCase::Resolved);
  CHECK(classify_cut(z, z, make_jump_line({5, 0}, {1, 0}), tri, 0.01) == CutCase::Uncut);
  // x = 0.3: |t.n1| >= 0.7 and 1 - rho = 0.7 on both crossed sides. With S1 the bottom
  // side the normals are orthonormal and t = -n1, which is ii.d.
  const JumpLine vertical = make_jump_line({0.3, 0.0}, {1.0, 0.0});
  CHECK(classify_cut(z, z, vertical, tri, 0.01) == CutCase::IIc);
  CHECK(classify_cut({0.0, 1.0}, {0.0, -1.0}, vertical, tri, 0.01) == CutCase::IId);
  CHECK(classify_cut({0.0, 1.0}, {0.0, -1.0}, vertical, tri, 0.4) == CutCase::IIa);
  CHECK(std::string(to_string(CutCase::IId)) == "ii.d");
}

TEST_CASE("classifier on benchmark meshes") {
  const Mesh m = square_mesh(5);
  auto count = [](const std::vector<CutCase>& cs, CutCase c) {
    return std::count(cs.begin(), cs.end(), c);
  };
  for (Vec2 b : {Vec2{0, 0}, Vec2{0.1, 0}}) {
    BenchmarkSpec s;
    s.shift = b;
    const auto cs = classify_mesh(m, s);
    CHECK(count(cs, CutCase::None) == 0);
  }
  BenchmarkSpec rotated;
  rotated.phi = std::numbers::pi / 4;
  const auto cs = classify_mesh(m, rotated);
  CHECK(count(cs, CutCase::None) > 0);
}

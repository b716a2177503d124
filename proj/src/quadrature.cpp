#include "roflab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <utility>

namespace roflab {

namespace {

constexpr double kCutTol = 1e-12;

// (P_n(x), P_n'(x)) by the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0;
  double p1 = x;
  for (int k = 2; k <= n; ++k) {
    const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = pk;
  }
  if (n == 1) return {x, 1.0};
  return {p1, n * (x * p1 - p0) / (x * x - 1.0)};
}

QuadRule1D build_gauss_legendre(int n) {
  QuadRule1D rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; ++it) {
      const auto [p, dp] = legendre(n, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre(n, x).second;
    // Nodes come out descending; store ascending on [0,1].
    rule.nodes[n - 1 - i] = 0.5 * (x + 1.0);
    rule.weights[n - 1 - i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

QuadRuleTri dunavant6() {
  QuadRuleTri rule;
  auto orbit3 = [&](double a, double b, double w) {
    rule.bary.push_back({a, b, b});
    rule.bary.push_back({b, a, b});
    rule.bary.push_back({b, b, a});
    for (int i = 0; i < 3; ++i) rule.weights.push_back(w);
  };
  auto orbit6 = [&](double a, double b, double c, double w) {
    const std::array<std::array<double, 3>, 6> perms{
        {{a, b, c}, {a, c, b}, {b, a, c}, {b, c, a}, {c, a, b}, {c, b, a}}};
    for (const auto& p : perms) {
      rule.bary.push_back(p);
      rule.weights.push_back(w);
    }
  };
  orbit3(0.501426509658179, 0.249286745170910, 0.116786275726379);
  orbit3(0.873821971016996, 0.063089014491502, 0.050844906370207);
  orbit6(0.053145049844817, 0.310352451033784, 0.636502499121399, 0.082851075618374);
  return rule;
}

QuadRuleTri collapsed_product(int degree) {
  // The Duffy Jacobian adds one polynomial degree in the collapsed direction.
  const int n = (degree + 3) / 2;
  const QuadRule1D& g = gauss_legendre(n);
  QuadRuleTri rule;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double u = g.nodes[i];
      const double v = g.nodes[j];
      const double l1 = u;
      const double l2 = (1.0 - u) * v;
      rule.bary.push_back({1.0 - l1 - l2, l1, l2});
      rule.weights.push_back(2.0 * g.weights[i] * g.weights[j] * (1.0 - u));
    }
  }
  return rule;
}

template <class Rule, class Build>
const Rule& cached(std::map<int, Rule>& cache, std::mutex& mu, int key, Build build) {
  std::lock_guard lock(mu);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build()).first;
  return it->second;
}

using Polygon = std::vector<Vec2>;

// Part of a convex polygon where sign * side_of(x) >= 0.
Polygon clip_halfplane(const Polygon& poly, const JumpLine& line, double sign, double tol) {
  Polygon out;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& p = poly[i];
    const Vec2& q = poly[(i + 1) % n];
    double dp = sign * line.side_of(p);
    double dq = sign * line.side_of(q);
    if (std::abs(dp) <= tol) dp = 0.0;
    if (std::abs(dq) <= tol) dq = 0.0;
    if (dp >= 0.0) out.push_back(p);
    if ((dp > 0.0 && dq < 0.0) || (dp < 0.0 && dq > 0.0)) {
      const double s = dp / (dp - dq);
      out.push_back(p + s * (q - p));
    }
  }
  return out;
}

double polygon_area(const Polygon& poly) {
  double a = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) a += cross(poly[i], poly[(i + 1) % poly.size()]);
  return 0.5 * a;
}

}  // namespace

JumpLine make_jump_line(const Vec2& base, const Vec2& normal) {
  const double len = norm(normal);
  if (!(len > 0.0)) throw std::invalid_argument("make_jump_line: zero normal");
  const Vec2 n = normal / len;
  return {base, {-n.y, n.x}, n};
}

JumpLine flipped(const JumpLine& line) { return {line.base, -line.tangent, -line.normal}; }

const QuadRule1D& gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need at least one point");
  static std::map<int, QuadRule1D> cache;
  static std::mutex mu;
  return cached(cache, mu, n, [n] { return build_gauss_legendre(n); });
}

const QuadRuleTri& triangle_rule(int degree) {
  if (degree < 1) throw std::invalid_argument("triangle_rule: degree must be positive");
  static std::map<int, QuadRuleTri> cache;
  static std::mutex mu;
  const int key = degree <= 6 ? 6 : degree;
  return cached(cache, mu, key, [key] { return key == 6 ? dunavant6() : collapsed_product(key); });
}

std::vector<double> segment_cuts(const Vec2& a, const Vec2& b, std::span<const JumpLine> lines) {
  std::vector<double> cuts;
  for (const JumpLine& line : lines) {
    const double da = line.side_of(a);
    const double db = line.side_of(b);
    if ((da < 0.0 && db > 0.0) || (da > 0.0 && db < 0.0)) {
      const double s = da / (da - db);
      if (s > kCutTol && s < 1.0 - kCutTol) cuts.push_back(s);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [](double x, double y) { return std::abs(x - y) <= kCutTol; }),
             cuts.end());
  return cuts;
}

std::vector<Triangle> split_triangle(const Triangle& tri, std::span<const JumpLine> lines) {
  const double scale = std::max({norm(tri[1] - tri[0]), norm(tri[2] - tri[1]), norm(tri[0] - tri[2])});
  const double tol = kCutTol * scale;
  const double area = std::abs(signed_area(tri[0], tri[1], tri[2]));
  std::vector<Polygon> pieces{Polygon(tri.begin(), tri.end())};
  for (const JumpLine& line : lines) {
    std::vector<Polygon> next;
    for (const Polygon& poly : pieces) {
      for (double sign : {1.0, -1.0}) {
        Polygon part = clip_halfplane(poly, line, sign, tol);
        if (part.size() >= 3 && std::abs(polygon_area(part)) > 1e-14 * area) next.push_back(std::move(part));
      }
    }
    pieces = std::move(next);
  }
  std::vector<Triangle> out;
  for (const Polygon& poly : pieces) {
    for (std::size_t i = 1; i + 1 < poly.size(); ++i) {
      if (std::abs(signed_area(poly[0], poly[i], poly[i + 1])) > 0.0) out.push_back({poly[0], poly[i], poly[i + 1]});
    }
  }
  return out;
}

double clip_side_fraction(const Vec2& a, const Vec2& b, const JumpLine& line) {
  const double da = line.side_of(a);
  const double db = line.side_of(b);
  if (da == 0.0 && db == 0.0) return 0.5;
  if (da <= 0.0 && db <= 0.0) return 1.0;
  if (da >= 0.0 && db >= 0.0) return 0.0;
  const double s = da / (da - db);
  return std::clamp(da < 0.0 ? s : 1.0 - s, 0.0, 1.0);
}

}  // namespace roflab

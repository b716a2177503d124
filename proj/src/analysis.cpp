#include "roflab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace roflab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Vec2 closest_on_segment(const Vec2& a, const Vec2& b, const Vec2& p) {
  const Vec2 d = b - a;
  const double s = std::clamp(dot(p - a, d) / dot(d, d), 0.0, 1.0);
  return a + s * d;
}

// Outward unit normal of local side i (opposite vertex i) of a triangle.
Vec2 outward_normal(const Triangle& tri, int i) {
  const Vec2 e = tri[(i + 2) % 3] - tri[(i + 1) % 3];
  const double orient = signed_area(tri[0], tri[1], tri[2]) > 0.0 ? 1.0 : -1.0;
  return (orient / norm(e)) * perp_cw(e);
}

std::array<double, 3> snapped_distances(const Triangle& tri, const JumpLine& line) {
  const double scale = std::max({norm(tri[1] - tri[0]), norm(tri[2] - tri[1]), norm(tri[0] - tri[2])});
  std::array<double, 3> d;
  for (int i = 0; i < 3; ++i) {
    d[i] = line.side_of(tri[i]);
    if (std::abs(d[i]) <= 1e-12 * scale) d[i] = 0.0;
  }
  return d;
}

// v with v.n1 = 1 and v.n2 = 0, i.e. M^{-T} e1 for M = (n1, n2).
Vec2 inverse_transpose_e1(const Vec2& n1, const Vec2& n2) {
  const double det = cross(n1, n2);
  if (std::abs(det) < 1e-14) throw std::invalid_argument("cut element: singular normal matrix");
  return Vec2{n2.y, -n2.x} / det;
}

}  // namespace

double midpoint_error_sq(const ScalarField& u_exact, const CrFunction& u_h) {
  const Mesh& m = *u_h.mesh;
  double s = 0.0;
  for (int t = 0; t < m.num_triangles(); ++t) {
    const double d = u_exact(m.barycenter(t)) - u_h.barycenter_value(t);
    s += m.area(t) * d * d;
  }
  return s;
}

std::vector<double> eoc(std::span<const double> e, std::span<const double> h) {
  if (e.size() != h.size()) throw std::invalid_argument("eoc: length mismatch");
  std::vector<double> out(e.size(), kNaN);
  for (std::size_t k = 1; k < e.size(); ++k) {
    if (e[k - 1] > 0.0 && e[k] > 0.0 && h[k - 1] > 0.0 && h[k] > 0.0 && h[k - 1] != h[k])
      out[k] = std::log(e[k - 1] / e[k]) / std::log(h[k - 1] / h[k]);
  }
  return out;
}

double mean_of_last(std::span<const double> values, int count) {
  std::vector<double> finite;
  for (double v : values)
    if (std::isfinite(v)) finite.push_back(v);
  if (count <= 0 || static_cast<int>(finite.size()) < count) return kNaN;
  double s = 0.0;
  for (std::size_t i = finite.size() - count; i < finite.size(); ++i) s += finite[i];
  return s / count;
}

double fit_exponent(std::span<const double> h, std::span<const double> v) {
  if (h.size() != v.size()) throw std::invalid_argument("fit_exponent: length mismatch");
  std::vector<double> x, y;
  for (std::size_t i = 0; i < h.size(); ++i) {
    if (v[i] > 1e-12 && h[i] > 0.0) {
      x.push_back(std::log(h[i]));
      y.push_back(std::log(v[i]));
    }
  }
  if (x.size() < 2) return kNaN;
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i] / n;
    my += y[i] / n;
  }
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0.0 ? sxy / sxx : kNaN;
}

InterpNorm interp_sup_norm(const Rt0Field& z) {
  const Mesh& m = *z.mesh;
  InterpNorm out{0.0, std::vector<double>(m.num_triangles(), 0.0)};
  for (int t = 0; t < m.num_triangles(); ++t) {
    const double v = norm(z.barycenter_value(t));
    out.sup_norm = std::max(out.sup_norm, v);
    out.excess[t] = std::max(0.0, v - 1.0);
  }
  return out;
}

Rt0Field benchmark_dual_interpolant(const Mesh& m, const BenchmarkSpec& spec, int points) {
  const std::vector<JumpLine> lines = jump_lines(spec);
  return rt_interpolate(m, [&](const Vec2& x) { return exact_dual(spec, x); }, lines, points);
}

InterpNorm interp_sup_norm(const Mesh& m, const BenchmarkSpec& spec) {
  return interp_sup_norm(benchmark_dual_interpolant(m, spec));
}

double hoelder_kappa(const InterpNorm& n) { return std::max(0.0, n.sup_norm - 1.0); }

Vec2 modulus_minimizer(const Triangle& tri, const Vec2& a, double c) {
  const Vec2 xt = (tri[0] + tri[1] + tri[2]) / 3.0;
  if (c == 0.0) return xt;
  // |a + c(x - x_T)| = |c| |x - p|, so the minimizer is the point of T closest to p.
  const Vec2 p = xt - a / c;
  if (triangle_contains(tri, p, 0.0)) return p;
  Vec2 best = closest_on_segment(tri[0], tri[1], p);
  for (int i = 1; i < 3; ++i) {
    const Vec2 q = closest_on_segment(tri[i], tri[(i + 1) % 3], p);
    if (norm(q - p) < norm(best - p)) best = q;
  }
  return best;
}

double hoelder_chain_defect(const Rt0Field& z) {
  const Mesh& m = *z.mesh;
  double worst = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < m.num_triangles(); ++t) {
    const Vec2 a = z.barycenter_value(t);
    const double div = z.divergence(t);
    const Vec2 x = modulus_minimizer(m.triangle_points(t), a, 0.5 * div);
    const double rhs = norm(z.evaluate(t, x)) + 0.5 * std::abs(div) * m.diameter(t);
    worst = std::max(worst, norm(a) - rhs);
  }
  return worst;
}

std::vector<CutGeometry> cut_geometries(const Triangle& tri, const JumpLine& line) {
  const auto d = snapped_distances(tri, line);
  const bool has_pos = std::any_of(d.begin(), d.end(), [](double v) { return v > 0.0; });
  const bool has_neg = std::any_of(d.begin(), d.end(), [](double v) { return v < 0.0; });
  std::vector<CutGeometry> out;
  if (!has_pos || !has_neg) return out;

  // Side i joins vertices i+1 and i+2.
  auto endpoint_d = [&](int i) { return std::array<double, 2>{d[(i + 1) % 3], d[(i + 2) % 3]}; };
  auto crossed = [&](int i) {
    const auto e = endpoint_d(i);
    return (e[0] < 0.0 && e[1] > 0.0) || (e[0] > 0.0 && e[1] < 0.0);
  };
  for (int s1 = 0; s1 < 3; ++s1) {
    if (!crossed(s1)) continue;
    for (int s2 = 0; s2 < 3; ++s2) {
      if (s2 == s1 || crossed(s2)) continue;
      const auto e = endpoint_d(s2);
      const bool positive = e[0] + e[1] > 0.0;
      CutGeometry g;
      g.s1 = s1;
      g.s2 = s2;
      g.n1 = outward_normal(tri, s1);
      g.n2 = outward_normal(tri, s2);
      g.swapped = positive;
      g.line = positive ? flipped(line) : line;
      g.rho = clip_side_fraction(tri[(s1 + 1) % 3], tri[(s1 + 2) % 3], g.line);
      out.push_back(g);
    }
  }
  return out;
}

Vec2 cut_element_interpolant(const Vec2& z_a, const Vec2& z_b, const CutGeometry& g) {
  const Vec2 za = g.swapped ? z_b : z_a;
  const Vec2 zb = g.swapped ? z_a : z_b;
  const Vec2& t = g.line.tangent;
  return zb + ((1.0 - g.rho) * dot(za - zb, t) * dot(t, g.n1)) * inverse_transpose_e1(g.n1, g.n2);
}

Vec2 cut_element_interpolant(const Vec2& z_a, const Vec2& z_b, const JumpLine& line, const Triangle& tri) {
  if (!(std::abs(signed_area(tri[0], tri[1], tri[2])) > 0.0))
    throw std::invalid_argument("cut_element_interpolant: degenerate triangle");
  const double scale = std::max({1.0, norm(z_a), norm(z_b)});
  if (std::abs(dot(z_a - z_b, line.normal)) > 1e-10 * scale)
    throw std::invalid_argument("cut_element_interpolant: normal components differ across the line");
  const auto geoms = cut_geometries(tri, line);
  if (geoms.empty()) throw std::invalid_argument("cut_element_interpolant: line does not cut the triangle");
  return cut_element_interpolant(z_a, z_b, geoms.front());
}

const char* to_string(CutCase c) {
  switch (c) {
    case CutCase::Uncut: return "uncut";
    case CutCase::Resolved: return "resolved";
    case CutCase::IIa: return "ii.a";
    case CutCase::IIb: return "ii.b";
    case CutCase::IIc: return "ii.c";
    case CutCase::IId: return "ii.d";
    case CutCase::None: return "none";
  }
  return "?";
}

CutCase classify_cut(const Vec2& z_a, const Vec2& z_b, const JumpLine& line, const Triangle& tri, double h,
                     const ClassifierOptions& opts) {
  const auto geoms = cut_geometries(tri, line);
  if (geoms.empty()) {
    const auto d = snapped_distances(tri, line);
    return std::count(d.begin(), d.end(), 0.0) >= 2 ? CutCase::Resolved : CutCase::Uncut;
  }
  const double tol = opts.constant * h;
  for (const auto& g : geoms)
    if (std::abs(dot(g.line.tangent, g.n1)) <= tol) return CutCase::IIa;
  for (const auto& g : geoms)
    if (1.0 - g.rho <= tol) return CutCase::IIb;
  for (const auto& g : geoms) {
    const Vec2 zb = g.swapped ? z_a : z_b;
    const Vec2 correction = cut_element_interpolant(z_a, z_b, g) - zb;
    if (norm(zb) < 1.0 && norm(correction) <= 1.0 - norm(zb) + tol) return CutCase::IIc;
  }
  for (const auto& g : geoms) {
    const Vec2 v1 = inverse_transpose_e1(g.n1, g.n2);
    const Vec2 v2 = inverse_transpose_e1(g.n2, g.n1);
    // ||M^{-T} - M||_F with columns (v1, v2) and (n1, n2).
    const Vec2 d1 = v1 - g.n1;
    const Vec2 d2 = v2 - g.n2;
    const double defect = std::sqrt(dot(d1, d1) + dot(d2, d2));
    const double align = std::min(norm(g.line.tangent - g.n1), norm(g.line.tangent + g.n1));
    if (defect <= tol && align <= tol) return CutCase::IId;
  }
  return CutCase::None;
}

std::vector<CutCase> classify_mesh(const Mesh& m, const BenchmarkSpec& spec, const ClassifierOptions& opts) {
  const std::vector<JumpLine> lines = jump_lines(spec);
  const double h = m.h_max();
  std::vector<CutCase> out(m.num_triangles(), CutCase::Uncut);
  for (int t = 0; t < m.num_triangles(); ++t) {
    const Triangle tri = m.triangle_points(t);
    int cuts = 0;
    CutCase result = CutCase::Uncut;
    for (const JumpLine& line : lines) {
      const auto geoms = cut_geometries(tri, line);
      if (geoms.empty()) {
        const CutCase c = classify_cut({}, {}, line, tri, h, opts);
        if (c == CutCase::Resolved && result == CutCase::Uncut) result = c;
        continue;
      }
      ++cuts;
      // Chord of the line inside T; its midpoint carries the one-sided values.
      std::vector<Vec2> hits;
      for (int i = 0; i < 3; ++i) {
        const Vec2& a = tri[(i + 1) % 3];
        const Vec2& b = tri[(i + 2) % 3];
        const double da = line.side_of(a);
        const double db = line.side_of(b);
        if (da == db) continue;
        const double s = da / (da - db);
        if (s >= 0.0 && s <= 1.0) hits.push_back(a + s * (b - a));
      }
      Vec2 mid = hits.front();
      for (const Vec2& p : hits)
        if (norm(p - hits.front()) > norm(mid - hits.front())) mid = p;
      mid = 0.5 * (hits.front() + mid);
      const Vec2 za = exact_dual_one_sided(spec, line, mid, 1.0);
      const Vec2 zb = exact_dual_one_sided(spec, line, mid, -1.0);
      result = classify_cut(za, zb, line, tri, h, opts);
    }
    out[t] = cuts > 1 ? CutCase::None : result;
  }
  return out;
}

}  // namespace roflab

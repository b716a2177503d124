#include "roflab/mesh.hpp"

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace roflab {

namespace {

std::uint64_t side_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

}  // namespace

Mesh::Mesh(std::vector<Vec2> vertices, std::vector<std::array<int, 3>> triangles)
    : vertices_(std::move(vertices)), triangles_(std::move(triangles)) {
  const int nv = num_vertices();
  const int nt = num_triangles();

  area_.resize(nt);
  barycenter_.resize(nt);
  diameter_.resize(nt);
  for (int t = 0; t < nt; ++t) {
    auto& tri = triangles_[t];
    for (int v : tri) {
      if (v < 0 || v >= nv)
        throw std::invalid_argument("Mesh: triangle " + std::to_string(t) +
                                    " references invalid vertex");
    }
    double a = signed_area(vertices_[tri[0]], vertices_[tri[1]], vertices_[tri[2]]);
    if (a < 0.0) {
      std::swap(tri[1], tri[2]);
      a = -a;
    }
    if (!(a > 0.0))
      throw std::invalid_argument("Mesh: degenerate triangle " + std::to_string(t));
    area_[t] = a;
    const Vec2& p0 = vertices_[tri[0]];
    const Vec2& p1 = vertices_[tri[1]];
    const Vec2& p2 = vertices_[tri[2]];
    barycenter_[t] = (p0 + p1 + p2) / 3.0;
    diameter_[t] = std::max({norm(p1 - p0), norm(p2 - p1), norm(p0 - p2)});
    h_max_ = std::max(h_max_, diameter_[t]);
  }

  // Sides are numbered in order of first appearance so the numbering only
  // depends on the triangle list.
  std::unordered_map<std::uint64_t, int> index_of;
  index_of.reserve(static_cast<std::size_t>(3 * nt));
  side_of_triangle_.resize(nt);
  for (int t = 0; t < nt; ++t) {
    const auto& tri = triangles_[t];
    for (int i = 0; i < 3; ++i) {
      const int a = tri[(i + 1) % 3];
      const int b = tri[(i + 2) % 3];
      auto [it, inserted] = index_of.try_emplace(side_key(a, b), num_sides());
      if (inserted) {
        sides_.push_back({std::min(a, b), std::max(a, b)});
        triangles_of_side_.push_back({t, kNoTriangle});
      } else {
        auto& adj = triangles_of_side_[it->second];
        if (adj[1] != kNoTriangle)
          throw std::invalid_argument("Mesh: side shared by more than two triangles");
        adj[1] = t;  // triangles are visited in increasing order, so T- < T+
      }
      side_of_triangle_[t][i] = it->second;
    }
  }

  const int ns = num_sides();
  side_midpoint_.resize(ns);
  side_length_.resize(ns);
  side_normal_.resize(ns);
  for (int s = 0; s < ns; ++s) {
    const int tminus = triangles_of_side_[s][0];
    const auto& tri = triangles_[tminus];
    const auto& loc = side_of_triangle_[tminus];
    const int i = static_cast<int>(std::find(loc.begin(), loc.end(), s) - loc.begin());
    // Counter-clockwise edge of T-: outward normal is the clockwise perpendicular.
    const Vec2& a = vertices_[tri[(i + 1) % 3]];
    const Vec2& b = vertices_[tri[(i + 2) % 3]];
    const double len = norm(b - a);
    side_midpoint_[s] = 0.5 * (a + b);
    side_length_[s] = len;
    side_normal_[s] = perp_cw(b - a) / len;
  }
}

void Mesh::check_triangle(int t) const {
  if (t < 0 || t >= num_triangles())
    throw std::out_of_range("Mesh: triangle index " + std::to_string(t) + " out of range");
}

void Mesh::check_side(int s) const {
  if (s < 0 || s >= num_sides())
    throw std::out_of_range("Mesh: side index " + std::to_string(s) + " out of range");
}

const Vec2& Mesh::vertex(int v) const {
  if (v < 0 || v >= num_vertices())
    throw std::out_of_range("Mesh: vertex index " + std::to_string(v) + " out of range");
  return vertices_[v];
}

const std::array<int, 3>& Mesh::triangle(int t) const {
  check_triangle(t);
  return triangles_[t];
}

Triangle Mesh::triangle_points(int t) const {
  const auto& tri = triangle(t);
  return {vertices_[tri[0]], vertices_[tri[1]], vertices_[tri[2]]};
}

const std::array<int, 3>& Mesh::sides_of_triangle(int t) const {
  check_triangle(t);
  return side_of_triangle_[t];
}

const std::array<int, 2>& Mesh::triangles_of_side(int s) const {
  check_side(s);
  return triangles_of_side_[s];
}

bool Mesh::is_boundary(int s) const { return triangles_of_side(s)[1] == kNoTriangle; }

double Mesh::side_sign(int t, int i) const {
  const int s = sides_of_triangle(t)[i];
  return triangles_of_side_[s][0] == t ? 1.0 : -1.0;
}

double Mesh::area(int t) const {
  check_triangle(t);
  return area_[t];
}

Vec2 Mesh::barycenter(int t) const {
  check_triangle(t);
  return barycenter_[t];
}

double Mesh::diameter(int t) const {
  check_triangle(t);
  return diameter_[t];
}

Vec2 Mesh::side_midpoint(int s) const {
  check_side(s);
  return side_midpoint_[s];
}

double Mesh::side_length(int s) const {
  check_side(s);
  return side_length_[s];
}

Vec2 Mesh::side_normal(int s) const {
  check_side(s);
  return side_normal_[s];
}

std::array<Vec2, 2> Mesh::side_endpoints(int s) const {
  check_side(s);
  return {vertices_[sides_[s][0]], vertices_[sides_[s][1]]};
}

double Mesh::total_area() const {
  double sum = 0.0;
  for (double a : area_) sum += a;
  return sum;
}

void Mesh::write_text(std::ostream& os) const {
  const auto old = os.precision(17);
  for (const auto& v : vertices_) os << "v " << v.x << ' ' << v.y << '\n';
  for (const auto& t : triangles_) os << "t " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
  os.precision(old);
}

Mesh initial_square_mesh() {
  return Mesh({{-1.0, -1.0}, {1.0, -1.0}, {1.0, 1.0}, {-1.0, 1.0}}, {{0, 1, 2}, {0, 2, 3}});
}

Mesh red_refine(const Mesh& m) {
  std::vector<Vec2> vertices = m.vertices();
  const int nv = m.num_vertices();
  vertices.reserve(static_cast<std::size_t>(nv + m.num_sides()));
  // One new vertex per parent side, shared by both neighbours.
  for (int s = 0; s < m.num_sides(); ++s) vertices.push_back(m.side_midpoint(s));

  std::vector<std::array<int, 3>> triangles;
  triangles.reserve(static_cast<std::size_t>(4 * m.num_triangles()));
  for (int t = 0; t < m.num_triangles(); ++t) {
    const auto& v = m.triangle(t);
    const auto& s = m.sides_of_triangle(t);
    // mid[i] sits on the side opposite local vertex i.
    const int m0 = nv + s[0];
    const int m1 = nv + s[1];
    const int m2 = nv + s[2];
    triangles.push_back({v[0], m2, m1});
    triangles.push_back({m2, v[1], m0});
    triangles.push_back({m1, m0, v[2]});
    triangles.push_back({m0, m1, m2});
  }
  return Mesh(std::move(vertices), std::move(triangles));
}

Mesh square_mesh(int level) {
  if (level < 0) throw std::invalid_argument("square_mesh: negative level");
  Mesh m = initial_square_mesh();
  for (int k = 0; k < level; ++k) m = red_refine(m);
  return m;
}

}  // namespace roflab

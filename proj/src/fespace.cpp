#include "roflab/fespace.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace roflab {

namespace {

std::array<double, 3> barycentric(const Triangle& tri, const Vec2& x) {
  const double a = signed_area(tri[0], tri[1], tri[2]);
  return {signed_area(x, tri[1], tri[2]) / a, signed_area(tri[0], x, tri[2]) / a,
          signed_area(tri[0], tri[1], x) / a};
}

void check_mesh(const Mesh* a, const Mesh& b, const char* what) {
  if (a != &b) throw std::invalid_argument(std::string(what) + ": field lives on a different mesh");
}

Vec2 rt_local(const Mesh& m, int t, const std::array<double, 3>& flux, const Vec2& x) {
  Vec2 v{};
  for (int i = 0; i < 3; ++i) v += flux[i] * rt0_basis(m, t, i, x);
  return v;
}

double rt_local_div(const Mesh& m, int t, const std::array<double, 3>& flux) {
  const auto& sides = m.sides_of_triangle(t);
  double d = 0.0;
  for (int i = 0; i < 3; ++i) d += m.side_sign(t, i) * m.side_length(sides[i]) * flux[i];
  return d / m.area(t);
}

std::array<double, 3> gather(const Rt0Field& z, int t) {
  const auto& sides = z.mesh->sides_of_triangle(t);
  return {z.fluxes[sides[0]], z.fluxes[sides[1]], z.fluxes[sides[2]]};
}

}  // namespace

P0Function::P0Function(const Mesh& m, std::vector<double> v) : mesh(&m), values(std::move(v)) {
  if (static_cast<int>(values.size()) != m.num_triangles())
    throw std::invalid_argument("P0Function: length differs from triangle count");
}

double P0Function::max_abs() const {
  double r = 0.0;
  for (double v : values) r = std::max(r, std::abs(v));
  return r;
}

double P0Function::norm_sq() const {
  double s = 0.0;
  for (int t = 0; t < mesh->num_triangles(); ++t) s += mesh->area(t) * values[t] * values[t];
  return s;
}

double P0VectorField::max_norm() const {
  double r = 0.0;
  for (const Vec2& v : values) r = std::max(r, norm(v));
  return r;
}

Vec2 cr_basis_gradient(const Mesh& m, int t, int i) {
  const int s = m.sides_of_triangle(t)[i];
  return (m.side_sign(t, i) * m.side_length(s) / m.area(t)) * m.side_normal(s);
}

Vec2 rt0_basis(const Mesh& m, int t, int i, const Vec2& x) {
  const int s = m.sides_of_triangle(t)[i];
  const Vec2& opposite = m.vertex(m.triangle(t)[i]);
  return (m.side_sign(t, i) * m.side_length(s) / (2.0 * m.area(t))) * (x - opposite);
}

bool triangle_contains(const Triangle& tri, const Vec2& x, double rel_tol) {
  const auto l = barycentric(tri, x);
  return std::all_of(l.begin(), l.end(), [&](double v) { return v >= -rel_tol; });
}

Vec2 CrFunction::gradient(int t) const {
  const auto& sides = mesh->sides_of_triangle(t);
  Vec2 g{};
  for (int i = 0; i < 3; ++i) g += values[sides[i]] * cr_basis_gradient(*mesh, t, i);
  return g;
}

double CrFunction::barycenter_value(int t) const {
  const auto& sides = mesh->sides_of_triangle(t);
  return (values[sides[0]] + values[sides[1]] + values[sides[2]]) / 3.0;
}

double CrFunction::value(int t, const Vec2& x) const {
  const auto l = barycentric(mesh->triangle_points(t), x);
  const auto& sides = mesh->sides_of_triangle(t);
  double v = 0.0;
  for (int i = 0; i < 3; ++i) v += values[sides[i]] * (1.0 - 2.0 * l[i]);
  return v;
}

void CrFunction::enforce_dirichlet() {
  if (!dirichlet) return;
  for (int s = 0; s < mesh->num_sides(); ++s)
    if (mesh->is_boundary(s)) values[s] = 0.0;
}

double CrFunction::boundary_max_abs() const {
  double r = 0.0;
  for (int s = 0; s < mesh->num_sides(); ++s)
    if (mesh->is_boundary(s)) r = std::max(r, std::abs(values[s]));
  return r;
}

Vec2 Rt0Field::evaluate(int t, const Vec2& x) const {
  if (!triangle_contains(mesh->triangle_points(t), x))
    throw std::out_of_range("Rt0Field::evaluate: point outside triangle " + std::to_string(t));
  return rt_local(*mesh, t, gather(*this, t), x);
}

Vec2 Rt0Field::barycenter_value(int t) const { return rt_local(*mesh, t, gather(*this, t), mesh->barycenter(t)); }

double Rt0Field::divergence(int t) const { return rt_local_div(*mesh, t, gather(*this, t)); }

Vec2 BrokenRt0Field::evaluate(int t, const Vec2& x) const {
  if (!triangle_contains(mesh->triangle_points(t), x))
    throw std::out_of_range("BrokenRt0Field::evaluate: point outside triangle " + std::to_string(t));
  return rt_local(*mesh, t, fluxes[t], x);
}

Vec2 BrokenRt0Field::barycenter_value(int t) const { return rt_local(*mesh, t, fluxes[t], mesh->barycenter(t)); }

double BrokenRt0Field::divergence(int t) const { return rt_local_div(*mesh, t, fluxes[t]); }

P0Function pi_h(const Mesh& m, const ScalarField& f, std::span<const JumpLine> lines, int degree) {
  P0Function out(m);
  for (int t = 0; t < m.num_triangles(); ++t)
    out[t] = triangle_integral(f, m.triangle_points(t), lines, degree) / m.area(t);
  return out;
}

P0VectorField pi_h(const Mesh& m, const VectorField& f, std::span<const JumpLine> lines, int degree) {
  P0VectorField out(m);
  for (int t = 0; t < m.num_triangles(); ++t)
    out[t] = triangle_integral(f, m.triangle_points(t), lines, degree) / m.area(t);
  return out;
}

P0Function pi_h(const CrFunction& u) {
  P0Function out(*u.mesh);
  for (int t = 0; t < u.mesh->num_triangles(); ++t) out[t] = u.barycenter_value(t);
  return out;
}

P0VectorField pi_h(const Rt0Field& z) {
  P0VectorField out(*z.mesh);
  for (int t = 0; t < z.mesh->num_triangles(); ++t) out[t] = z.barycenter_value(t);
  return out;
}

P0VectorField pi_h(const BrokenRt0Field& z) {
  P0VectorField out(*z.mesh);
  for (int t = 0; t < z.mesh->num_triangles(); ++t) out[t] = z.barycenter_value(t);
  return out;
}

P0Function sample_at_barycenters(const Mesh& m, const ScalarField& f) {
  P0Function out(m);
  for (int t = 0; t < m.num_triangles(); ++t) out[t] = f(m.barycenter(t));
  return out;
}

P0VectorField cr_gradient(const CrFunction& u) {
  P0VectorField out(*u.mesh);
  for (int t = 0; t < u.mesh->num_triangles(); ++t) out[t] = u.gradient(t);
  return out;
}

P0Function rt_divergence(const Rt0Field& z) {
  P0Function out(*z.mesh);
  for (int t = 0; t < z.mesh->num_triangles(); ++t) out[t] = z.divergence(t);
  return out;
}

CrFunction cr_interpolate(const Mesh& m, const ScalarField& v, std::span<const JumpLine> lines, int points,
                          bool dirichlet) {
  CrFunction u(m, dirichlet);
  for (int s = 0; s < m.num_sides(); ++s) {
    const auto ends = m.side_endpoints(s);
    u.values[s] = segment_average(v, ends[0], ends[1], lines, points);
  }
  u.enforce_dirichlet();
  return u;
}

Rt0Field rt_interpolate(const Mesh& m, const VectorField& z, std::span<const JumpLine> lines, int points) {
  Rt0Field out(m);
  for (int s = 0; s < m.num_sides(); ++s) {
    const auto ends = m.side_endpoints(s);
    const Vec2 n = m.side_normal(s);
    out.fluxes[s] = segment_average([&](const Vec2& x) { return dot(z(x), n); }, ends[0], ends[1], lines, points);
  }
  return out;
}

Vector cr_mass_diagonal(const Mesh& m) {
  Vector d(m.num_sides(), 0.0);
  for (int t = 0; t < m.num_triangles(); ++t)
    for (int s : m.sides_of_triangle(t)) d[s] += m.area(t) / 3.0;
  return d;
}

SparseMatrix cr_stiffness(const Mesh& m, const P0Function& weights) {
  check_mesh(weights.mesh, m, "cr_stiffness");
  SparseBuilder b(m.num_sides());
  for (int t = 0; t < m.num_triangles(); ++t) {
    const double w = weights[t];
    if (!(w > 0.0)) throw std::invalid_argument("cr_stiffness: non-positive weight on triangle " + std::to_string(t));
    const auto& sides = m.sides_of_triangle(t);
    std::array<Vec2, 3> g;
    for (int i = 0; i < 3; ++i) g[i] = cr_basis_gradient(m, t, i);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) b.add(sides[i], sides[j], w * m.area(t) * dot(g[i], g[j]));
  }
  return b.finalize();
}

SparseMatrix fidelity_matrix(const Mesh& m) {
  SparseBuilder b(m.num_sides());
  for (int t = 0; t < m.num_triangles(); ++t) {
    const auto& sides = m.sides_of_triangle(t);
    for (int i : sides)
      for (int j : sides) b.add(i, j, m.area(t) / 9.0);
  }
  return b.finalize();
}

Vector fidelity_load(const Mesh& m, const P0Function& g) {
  check_mesh(g.mesh, m, "fidelity_load");
  Vector load(m.num_sides(), 0.0);
  for (int t = 0; t < m.num_triangles(); ++t)
    for (int s : m.sides_of_triangle(t)) load[s] += m.area(t) * g[t] / 3.0;
  return load;
}

double cr_l2_norm(const Mesh& m, std::span<const double> values) {
  if (static_cast<int>(values.size()) != m.num_sides()) throw std::invalid_argument("cr_l2_norm: length mismatch");
  const Vector d = cr_mass_diagonal(m);
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) s += d[i] * values[i] * values[i];
  return std::sqrt(s);
}

}  // namespace roflab

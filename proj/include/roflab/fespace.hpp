#pragma once

#include <array>
#include <functional>
#include <span>
#include <vector>

#include "roflab/geometry.hpp"
#include "roflab/linalg.hpp"
#include "roflab/mesh.hpp"
#include "roflab/quadrature.hpp"

namespace roflab {

/// Element-wise constant scalar function.
struct P0Function {
  const Mesh* mesh = nullptr;
  std::vector<double> values;

  explicit P0Function(const Mesh& m, double fill = 0.0) : mesh(&m), values(m.num_triangles(), fill) {}
  P0Function(const Mesh& m, std::vector<double> v);

  double operator[](int t) const { return values[t]; }
  double& operator[](int t) { return values[t]; }
  double max_abs() const;
  /// L2 norm squared, sum |T| v_T^2.
  double norm_sq() const;
};

/// Element-wise constant vector field.
struct P0VectorField {
  const Mesh* mesh = nullptr;
  std::vector<Vec2> values;

  explicit P0VectorField(const Mesh& m) : mesh(&m), values(m.num_triangles()) {}

  const Vec2& operator[](int t) const { return values[t]; }
  Vec2& operator[](int t) { return values[t]; }
  double max_norm() const;
};

/// Crouzeix-Raviart function: one value per side, the value at the side midpoint.
/// With `dirichlet` set, boundary values are held at zero.
struct CrFunction {
  const Mesh* mesh = nullptr;
  std::vector<double> values;
  bool dirichlet = false;

  explicit CrFunction(const Mesh& m, bool homogeneous_dirichlet = false)
      : mesh(&m), values(m.num_sides(), 0.0), dirichlet(homogeneous_dirichlet) {}

  /// Gradient on triangle t.
  Vec2 gradient(int t) const;
  /// Value at the barycenter of t, which is the mean of its three side values.
  double barycenter_value(int t) const;
  /// Value of the affine restriction to t at x (no containment check).
  double value(int t, const Vec2& x) const;
  /// Zeroes boundary values if `dirichlet` is set.
  void enforce_dirichlet();
  /// Max |u_S| over boundary sides.
  double boundary_max_abs() const;
};

/// Lowest-order Raviart-Thomas field: one flux per side, along the global normal n_S.
struct Rt0Field {
  const Mesh* mesh = nullptr;
  std::vector<double> fluxes;

  explicit Rt0Field(const Mesh& m) : mesh(&m), fluxes(m.num_sides(), 0.0) {}

  /// Value at x in triangle t; throws if x is outside t (relative tolerance 1e-12).
  Vec2 evaluate(int t, const Vec2& x) const;
  Vec2 barycenter_value(int t) const;
  double divergence(int t) const;
};

/// RT0 field that is allowed to be discontinuous in the normal component:
/// every triangle carries its own three fluxes along the global side normals.
struct BrokenRt0Field {
  const Mesh* mesh = nullptr;
  std::vector<std::array<double, 3>> fluxes;

  explicit BrokenRt0Field(const Mesh& m) : mesh(&m), fluxes(m.num_triangles(), {0.0, 0.0, 0.0}) {}

  Vec2 evaluate(int t, const Vec2& x) const;
  Vec2 barycenter_value(int t) const;
  double divergence(int t) const;
};

/// Local RT0 basis function of side i of t (flux +1 along the global n_S) evaluated at x.
Vec2 rt0_basis(const Mesh& m, int t, int i, const Vec2& x);
/// Gradient of the CR basis function of side i of t.
Vec2 cr_basis_gradient(const Mesh& m, int t, int i);

/// True if x lies in the closed triangle up to a relative tolerance.
bool triangle_contains(const Triangle& tri, const Vec2& x, double rel_tol = 1e-12);

using ScalarField = std::function<double(const Vec2&)>;
using VectorField = std::function<Vec2(const Vec2&)>;

/// Element means of f, split at the given lines.
P0Function pi_h(const Mesh& m, const ScalarField& f, std::span<const JumpLine> lines = {},
                int degree = kDefaultTriangleDegree);
P0VectorField pi_h(const Mesh& m, const VectorField& f, std::span<const JumpLine> lines = {},
                   int degree = kDefaultTriangleDegree);
/// Pi_h of discrete fields: barycenter values.
P0Function pi_h(const CrFunction& u);
P0VectorField pi_h(const Rt0Field& z);
P0VectorField pi_h(const BrokenRt0Field& z);

/// Element values f(x_T).
P0Function sample_at_barycenters(const Mesh& m, const ScalarField& f);

P0VectorField cr_gradient(const CrFunction& u);
P0Function rt_divergence(const Rt0Field& z);

/// CR interpolant from side averages of v.
CrFunction cr_interpolate(const Mesh& m, const ScalarField& v, std::span<const JumpLine> lines = {},
                          int points = kDefaultSegmentPoints, bool dirichlet = false);
/// RT0 interpolant from side averages of z.n_S.
Rt0Field rt_interpolate(const Mesh& m, const VectorField& z, std::span<const JumpLine> lines = {},
                        int points = kDefaultSegmentPoints);

/// Diagonal of the CR mass matrix: sum over adjacent T of |T|/3.
Vector cr_mass_diagonal(const Mesh& m);
/// sum_T w_T |T| grad(phi_S).grad(phi_S'); throws on non-positive weights.
SparseMatrix cr_stiffness(const Mesh& m, const P0Function& weights);
/// sum_T |T|/9 on the 3x3 all-ones block of each element.
SparseMatrix fidelity_matrix(const Mesh& m);
/// G_S = sum_T |T| g_T / 3, the load of (g_h, Pi_h v).
Vector fidelity_load(const Mesh& m, const P0Function& g);

/// L2 norm of a CR function through the exact diagonal mass.
double cr_l2_norm(const Mesh& m, std::span<const double> values);

}  // namespace roflab

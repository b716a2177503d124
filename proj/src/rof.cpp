#include "roflab/rof.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace roflab {

namespace {

template <class Field>
double dual_energy_impl(const RofProblem& p, const Field& y) {
  const Mesh& m = *p.mesh;
  // Expanded form of -(1/2a)||div y + a g||^2 + (a/2)||g||^2; the g^2 terms
  // cancel algebraically, so y = 0 gives exactly 0.
  double div_sq = 0.0;
  double div_g = 0.0;
  for (int t = 0; t < m.num_triangles(); ++t) {
    if (norm(y.barycenter_value(t)) > 1.0 + kDualFeasTol) return kInfeasible;
    const double d = y.divergence(t);
    div_sq += m.area(t) * d * d;
    div_g += m.area(t) * d * p.g[t];
  }
  return -div_sq / (2.0 * p.alpha) - div_g;
}

}  // namespace

RofProblem::RofProblem(const Mesh& m, double alpha_, P0Function g_, double eps_)
    : mesh(&m), alpha(alpha_), g(std::move(g_)), eps(eps_) {
  if (!(alpha > 0.0)) throw std::invalid_argument("RofProblem: alpha must be positive");
  if (!(eps >= 0.0)) throw std::invalid_argument("RofProblem: eps must be non-negative");
  if (g.mesh != &m) throw std::invalid_argument("RofProblem: data lives on a different mesh");
}

double reg_modulus(const Vec2& a, double eps) { return std::sqrt(a.x * a.x + a.y * a.y + eps * eps); }

double primal_energy(const RofProblem& p, const CrFunction& u) {
  const Mesh& m = *p.mesh;
  double tv = 0.0;
  double fid = 0.0;
  for (int t = 0; t < m.num_triangles(); ++t) {
    tv += m.area(t) * reg_modulus(u.gradient(t), p.eps);
    const double d = u.barycenter_value(t) - p.g[t];
    fid += m.area(t) * d * d;
  }
  return tv + 0.5 * p.alpha * fid;
}

double dual_energy(const RofProblem& p, const Rt0Field& y) { return dual_energy_impl(p, y); }
double dual_energy(const RofProblem& p, const BrokenRt0Field& y) { return dual_energy_impl(p, y); }

DualReconstruction dual_reconstruction(const RofProblem& p, const CrFunction& u) {
  if (!(p.eps > 0.0)) throw std::invalid_argument("dual_reconstruction: needs eps > 0");
  const Mesh& m = *p.mesh;
  DualReconstruction out{BrokenRt0Field(m), Rt0Field(m)};
  std::vector<double> sum(m.num_sides(), 0.0);
  std::vector<int> count(m.num_sides(), 0);
  std::vector<double> first(m.num_sides(), 0.0);
  for (int t = 0; t < m.num_triangles(); ++t) {
    const Vec2 grad = u.gradient(t);
    const Vec2 sigma = grad / reg_modulus(grad, p.eps);
    const double c = 0.5 * p.alpha * (u.barycenter_value(t) - p.g[t]);
    const Vec2 xt = m.barycenter(t);
    const auto& sides = m.sides_of_triangle(t);
    for (int i = 0; i < 3; ++i) {
      const int s = sides[i];
      // w_T is affine, so its side mean is the midpoint value.
      const double flux = dot(sigma + c * (m.side_midpoint(s) - xt), m.side_normal(s));
      out.broken.fluxes[t][i] = flux;
      if (count[s] == 0) {
        first[s] = flux;
      } else {
        out.conformity_defect = std::max(out.conformity_defect, std::abs(flux - first[s]));
      }
      sum[s] += flux;
      ++count[s];
    }
  }
  for (int s = 0; s < m.num_sides(); ++s) out.averaged.fluxes[s] = sum[s] / count[s];
  double pmax = 0.0;
  for (int t = 0; t < m.num_triangles(); ++t) pmax = std::max(pmax, norm(out.averaged.barycenter_value(t)));
  out.scale = std::max(1.0, pmax);
  if (out.scale > 1.0)
    for (double& f : out.averaged.fluxes) f /= out.scale;
  return out;
}

double duality_gap(const RofProblem& p, const CrFunction& u, const Rt0Field& y) {
  return primal_energy(p, u) - dual_energy(p, y);
}

CoercivityTerms coercivity_terms(const RofProblem& p, const CrFunction& u_min, const CrFunction& v) {
  const Mesh& m = *p.mesh;
  double diff = 0.0;
  for (int t = 0; t < m.num_triangles(); ++t) {
    const double d = v.barycenter_value(t) - u_min.barycenter_value(t);
    diff += m.area(t) * d * d;
  }
  return {0.5 * p.alpha * diff, primal_energy(p, v) - primal_energy(p, u_min)};
}

bool coercivity_check(const RofProblem& p, const CrFunction& u_min, const CrFunction& v, double slack) {
  const auto [lhs, rhs] = coercivity_terms(p, u_min, v);
  return lhs <= rhs + slack;
}

}  // namespace roflab

#pragma once

#include <limits>

#include "roflab/fespace.hpp"

namespace roflab {

/// Discrete (regularized) ROF problem: weight alpha, data g_h, regularization eps.
struct RofProblem {
  const Mesh* mesh;
  double alpha;
  P0Function g;
  double eps;

  RofProblem(const Mesh& m, double alpha, P0Function g, double eps);
};

inline constexpr double kDualFeasTol = 1e-10;
inline constexpr double kInfeasible = -std::numeric_limits<double>::infinity();

/// (|a|^2 + eps^2)^(1/2).
double reg_modulus(const Vec2& a, double eps);

/// sum_T |T| |grad u|_eps + (alpha/2) sum_T |T| (u(x_T) - g_T)^2.
double primal_energy(const RofProblem& p, const CrFunction& u);

/// -(1/2alpha)||div y + alpha g||^2 + (alpha/2)||g||^2, or kInfeasible when
/// some |y(x_T)| exceeds 1 + kDualFeasTol.
double dual_energy(const RofProblem& p, const Rt0Field& y);
double dual_energy(const RofProblem& p, const BrokenRt0Field& y);

struct DualReconstruction {
  /// Per-element fluxes of w_T = grad u/|grad u|_eps + (alpha/2)(u(x_T) - g_T)(x - x_T).
  BrokenRt0Field broken;
  /// Single-valued field: one-sided fluxes averaged over the neighbours, divided by `scale`.
  Rt0Field averaged;
  /// max(1, max_T |Pi_h of the unscaled average|), so that `averaged` is feasible.
  double scale = 1.0;
  /// Largest difference of the two one-sided fluxes over interior sides.
  double conformity_defect = 0.0;
};

DualReconstruction dual_reconstruction(const RofProblem& p, const CrFunction& u);

double duality_gap(const RofProblem& p, const CrFunction& u, const Rt0Field& y);

/// Both sides of (alpha/2)||Pi_h(v - u)||^2 <= I(v) - I(u).
struct CoercivityTerms {
  double lhs;
  double rhs;
};
CoercivityTerms coercivity_terms(const RofProblem& p, const CrFunction& u_min, const CrFunction& v);
bool coercivity_check(const RofProblem& p, const CrFunction& u_min, const CrFunction& v, double slack);

}  // namespace roflab

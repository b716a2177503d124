#include "roflab/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace roflab {

double FlowConfig::resolved_stop_tol(const Mesh& m) const {
  return stop_tol > 0.0 ? stop_tol : stop_factor * m.h_max();
}

double FlowTrace::max_energy_increase() const {
  double worst = -std::numeric_limits<double>::infinity();
  double prev = initial_energy;
  for (const auto& r : records) {
    worst = std::max(worst, r.energy - prev);
    prev = r.energy;
  }
  return worst;
}

FlowOperator::FlowOperator(const RofProblem& p, double tau) : p_(&p), tau_(tau) {
  if (!(tau > 0.0)) throw std::invalid_argument("FlowOperator: tau must be positive");
  const Mesh& m = *p.mesh;
  pattern_ = fidelity_matrix(m);
  mass_ = cr_mass_diagonal(m);
  load_ = fidelity_load(m, p.g);

  base_values_ = pattern_.values();
  for (double& v : base_values_) v *= p.alpha;
  for (int s = 0; s < m.num_sides(); ++s) base_values_[pattern_.find(s, s)] += mass_[s] / tau;

  positions_.resize(m.num_triangles());
  local_k_.resize(m.num_triangles());
  for (int t = 0; t < m.num_triangles(); ++t) {
    const auto& sides = m.sides_of_triangle(t);
    std::array<Vec2, 3> g;
    for (int i = 0; i < 3; ++i) g[i] = cr_basis_gradient(m, t, i);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        positions_[t][3 * i + j] = pattern_.find(sides[i], sides[j]);
        local_k_[t][3 * i + j] = m.area(t) * dot(g[i], g[j]);
      }
    }
  }
  boundary_.resize(m.num_sides());
  for (int s = 0; s < m.num_sides(); ++s) boundary_[s] = m.is_boundary(s);
}

SparseSystem FlowOperator::system(const CrFunction& u_prev) const {
  const Mesh& m = *p_->mesh;
  SparseSystem sys{pattern_, Vector(m.num_sides()), boundary_};
  auto& vals = sys.matrix.values();
  vals = base_values_;
  for (int t = 0; t < m.num_triangles(); ++t) {
    const double w = 1.0 / reg_modulus(u_prev.gradient(t), p_->eps);
    for (int k = 0; k < 9; ++k) vals[positions_[t][k]] += w * local_k_[t][k];
  }
  for (int s = 0; s < m.num_sides(); ++s) sys.rhs[s] = mass_[s] / tau_ * u_prev.values[s] + p_->alpha * load_[s];
  sys.apply_dirichlet();
  return sys;
}

StepResult flow_step(const FlowOperator& op, const CrFunction& u_prev, const FlowConfig& cfg) {
  const SparseSystem sys = op.system(u_prev);
  CgResult res = cg_solve(sys, u_prev.values, {cfg.cg_rel_tol, 0});
  StepResult out{CrFunction(*u_prev.mesh, true), res.iterations};
  out.u.values = std::move(res.x);
  out.u.enforce_dirichlet();
  return out;
}

CrFunction flow_step(const RofProblem& p, const CrFunction& u_prev, const FlowConfig& cfg) {
  const FlowOperator op(p, cfg.tau);
  return flow_step(op, u_prev, cfg).u;
}

FlowResult flow_run(const RofProblem& p, const CrFunction& u0, const FlowConfig& cfg) {
  if (!(cfg.max_steps > 0)) throw std::invalid_argument("flow_run: max_steps must be positive");
  const Mesh& m = *p.mesh;
  const double stop = cfg.resolved_stop_tol(m);
  if (!(stop > 0.0)) throw std::invalid_argument("flow_run: stopping tolerance must be positive");
  const FlowOperator op(p, cfg.tau);

  FlowResult out{u0, {}};
  out.u.dirichlet = true;
  out.u.enforce_dirichlet();
  out.trace.initial_energy = primal_energy(p, out.u);
  for (int k = 1; k <= cfg.max_steps; ++k) {
    StepResult step = [&] {
      try {
        return flow_step(op, out.u, cfg);
      } catch (const CgError& e) {
        throw FlowError("flow_run: step " + std::to_string(k) + ": " + e.what(), k, out.trace);
      }
    }();
    double inc = 0.0;
    for (int s = 0; s < m.num_sides(); ++s) {
      const double d = step.u.values[s] - out.u.values[s];
      inc += op.mass()[s] * d * d;
    }
    inc = std::sqrt(inc) / cfg.tau;
    out.u = std::move(step.u);
    out.trace.records.push_back({k, primal_energy(p, out.u), inc, step.cg_iterations});
    if (inc <= stop) return out;
  }
  throw FlowError("flow_run: no convergence within " + std::to_string(cfg.max_steps) + " steps", cfg.max_steps,
                  out.trace);
}

}  // namespace roflab

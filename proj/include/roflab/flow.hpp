#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "roflab/linalg.hpp"
#include "roflab/rof.hpp"

namespace roflab {

/// Settings of the semi-implicit gradient flow. The regularization of the
/// weights is the problem's eps.
struct FlowConfig {
  double tau = 1.0;
  /// Stop once ||u^k - u^{k-1}||/tau <= stop_tol; non-positive means stop_factor * h.
  double stop_tol = 0.0;
  double stop_factor = 1.0 / 20.0;
  int max_steps = 10000;
  double cg_rel_tol = 1e-10;

  double resolved_stop_tol(const Mesh& m) const;
};

struct FlowRecord {
  int step;
  double energy;
  double increment;  // ||u^k - u^{k-1}||_{L2} / tau
  int cg_iterations;
};

struct FlowTrace {
  double initial_energy = 0.0;
  std::vector<FlowRecord> records;

  int steps() const { return static_cast<int>(records.size()); }
  double final_energy() const { return records.empty() ? initial_energy : records.back().energy; }
  /// Largest energy increase between consecutive iterates (<= 0 for a monotone trace).
  double max_energy_increase() const;
};

class FlowError : public std::runtime_error {
 public:
  FlowError(const std::string& what, int step, FlowTrace trace)
      : std::runtime_error(what), step_(step), trace_(std::move(trace)) {}
  int step() const { return step_; }
  const FlowTrace& trace() const { return trace_; }

 private:
  int step_;
  FlowTrace trace_;
};

/// Step matrix (1/tau)M + K_w + alpha F on a fixed sparsity pattern. Mass,
/// fidelity and load are assembled once; each step only refills K_w.
class FlowOperator {
 public:
  FlowOperator(const RofProblem& p, double tau);

  /// Linear system for one step from u_prev, boundary rows eliminated.
  SparseSystem system(const CrFunction& u_prev) const;
  const Vector& mass() const { return mass_; }

 private:
  const RofProblem* p_;
  double tau_;
  SparseMatrix pattern_;
  Vector base_values_;                          // (1/tau)M + alpha F
  std::vector<std::array<int, 9>> positions_;   // CSR slots of each element block
  std::vector<std::array<double, 9>> local_k_;  // |T| grad(phi_i).grad(phi_j)
  Vector mass_;
  Vector load_;
  std::vector<bool> boundary_;
};

struct StepResult {
  CrFunction u;
  int cg_iterations;
};

StepResult flow_step(const FlowOperator& op, const CrFunction& u_prev, const FlowConfig& cfg);
CrFunction flow_step(const RofProblem& p, const CrFunction& u_prev, const FlowConfig& cfg);

struct FlowResult {
  CrFunction u;
  FlowTrace trace;
};

/// Iterates flow_step from u0 until the increment drops below the stopping tolerance.
/// Throws FlowError on linear-solver failure or when max_steps is exceeded.
FlowResult flow_run(const RofProblem& p, const CrFunction& u0, const FlowConfig& cfg);

}  // namespace roflab

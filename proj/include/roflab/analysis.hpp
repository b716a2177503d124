#pragma once

#include <span>
#include <vector>

#include "roflab/benchmarks.hpp"
#include "roflab/fespace.hpp"

namespace roflab {

/// sum_T |T| (u_exact(x_T) - u_h(x_T))^2.
double midpoint_error_sq(const ScalarField& u_exact, const CrFunction& u_h);

/// EOC_k = log(e_{k-1}/e_k)/log(h_{k-1}/h_k); entry 0 and entries with a
/// non-positive error are NaN.
std::vector<double> eoc(std::span<const double> e, std::span<const double> h);

/// Mean of the last `count` finite EOC entries; NaN if there are fewer.
double mean_of_last(std::span<const double> values, int count);

/// Least-squares slope of log(v) against log(h) over entries with v > 1e-12.
double fit_exponent(std::span<const double> h, std::span<const double> v);

/// Side quadrature used for interpolating benchmark duals: Gauss points per piece.
inline constexpr int kInterpSegmentPoints = 20;

struct InterpNorm {
  double sup_norm;          // max_T |Pi_h I_RT z(x_T)|
  std::vector<double> excess;  // per element max(0, |Pi_h I_RT z| - 1)
};

/// Sup norm of Pi_h of an RT0 field.
InterpNorm interp_sup_norm(const Rt0Field& z);
/// I_RT of the benchmark dual with quadrature split at its jump lines.
Rt0Field benchmark_dual_interpolant(const Mesh& m, const BenchmarkSpec& spec,
                                    int points = kInterpSegmentPoints);
InterpNorm interp_sup_norm(const Mesh& m, const BenchmarkSpec& spec);

/// kappa(h) = max(0, sup_norm - 1).
double hoelder_kappa(const InterpNorm& n);

/// Largest violation over elements of
/// |Pi_h z|_T <= |z(x~_T)| + (1/2) |div z|_T h_T, x~_T the minimizer of |z| over T.
double hoelder_chain_defect(const Rt0Field& z);
/// Point of T minimizing |a + c (x - x_T)|.
Vec2 modulus_minimizer(const Triangle& tri, const Vec2& a, double c);

/// Geometry of a triangle cut by a line, in the orientation where the uncut
/// side S2 lies in the negative halfplane Omega_b.
struct CutGeometry {
  int s1;          // local index of a crossed side
  int s2;          // local index of an uncut side inside Omega_b
  Vec2 n1;         // outward unit normal of S1
  Vec2 n2;         // outward unit normal of S2
  double rho;      // |S1 cap Omega_b| / |S1|
  JumpLine line;   // possibly flipped
  bool swapped;    // true if the line was flipped (z_a and z_b exchange roles)
};

/// All admissible (S1, S2) choices; empty if the line does not cut the open triangle.
std::vector<CutGeometry> cut_geometries(const Triangle& tri, const JumpLine& line);

/// Constant RT0 interpolant on a cut triangle of the field equal to z_a on the
/// positive side of the line and z_b on the negative side (closed formula).
/// Requires z_a.n = z_b.n; throws if the triangle is not cut or is degenerate.
Vec2 cut_element_interpolant(const Vec2& z_a, const Vec2& z_b, const JumpLine& line, const Triangle& tri);
Vec2 cut_element_interpolant(const Vec2& z_a, const Vec2& z_b, const CutGeometry& g);

enum class CutCase { Uncut, Resolved, IIa, IIb, IIc, IId, None };
const char* to_string(CutCase c);

/// Classifier thresholds: the O(h) tests use constant * h.
struct ClassifierOptions {
  double constant = 2.0;
};

/// Which sufficient condition certifies |I_RT z_T| <= 1 + C h on a cut element.
CutCase classify_cut(const Vec2& z_a, const Vec2& z_b, const JumpLine& line, const Triangle& tri, double h,
                     const ClassifierOptions& opts = {});

/// Classifies every element of the mesh for the benchmark's jump lines.
std::vector<CutCase> classify_mesh(const Mesh& m, const BenchmarkSpec& spec, const ClassifierOptions& opts = {});

}  // namespace roflab

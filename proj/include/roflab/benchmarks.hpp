#pragma once

#include <span>
#include <vector>

#include "roflab/geometry.hpp"
#include "roflab/quadrature.hpp"

namespace roflab {

enum class BenchmarkKind { TwoDisk, FourDisk };

/// Two- or four-disk ROF benchmark, rotated by phi and shifted by `shift`:
/// the data is g o Phi with Phi(x) = Q(x - shift), Q = [[cos, sin], [-sin, cos]].
struct BenchmarkSpec {
  BenchmarkKind kind = BenchmarkKind::TwoDisk;
  double r = 0.4;
  double alpha = 10.0;
  double phi = 0.0;
  Vec2 shift{};

  /// Throws std::invalid_argument unless alpha*r > 2 and all disks lie inside (-1,1)^2.
  void validate() const;

  Vec2 normal() const;   // (cos phi, sin phi)
  Vec2 tangent() const;  // (-sin phi, cos phi)
  /// Reference coordinates Phi(x).
  Vec2 to_reference(const Vec2& x) const;
  /// World coordinates Phi^{-1}(y).
  Vec2 to_world(const Vec2& y) const;
  /// Disk centers in world coordinates with their sign in the data.
  std::vector<std::pair<Vec2, double>> disks() const;
};

/// max(0, 1 - 2/(alpha r)).
double primal_coefficient(const BenchmarkSpec& spec);

double data_g(const BenchmarkSpec& spec, const Vec2& x);
double exact_primal(const BenchmarkSpec& spec, const Vec2& x);
/// Transformed dual Q^T z(Phi(x)); the near-field branch wins at ties.
Vec2 exact_dual(const BenchmarkSpec& spec, const Vec2& x);
double dual_divergence(const BenchmarkSpec& spec, const Vec2& x);

/// Limit of the dual at x from the side sign * line.normal of one of the jump lines.
/// The other jump line (four-disk) is resolved by position.
Vec2 exact_dual_one_sided(const BenchmarkSpec& spec, const JumpLine& line, const Vec2& x, double sign);

/// Discontinuity lines of the dual: one for two-disk, two for four-disk.
std::vector<JumpLine> jump_lines(const BenchmarkSpec& spec);

/// Distance of x to the jump lines and disk circles.
double distance_to_singular_set(const BenchmarkSpec& spec, const Vec2& x);

/// max |div z - alpha (u - g)| over the points.
double optimality_residual(const BenchmarkSpec& spec, std::span<const Vec2> points);

/// |Du|(Omega) of the exact primal solution.
double exact_total_variation(const BenchmarkSpec& spec);

}  // namespace roflab

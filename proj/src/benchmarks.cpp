#include "roflab/benchmarks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace roflab {

namespace {

// Two-disk data in reference coordinates.
double g_two(double r, const Vec2& y) {
  if (norm(y - Vec2{r, 0.0}) < r) return 1.0;
  if (norm(y + Vec2{r, 0.0}) < r) return -1.0;
  return 0.0;
}

// side: +1 or -1 forces the half plane y1 > 0 or y1 < 0, 0 picks it from y.
Vec2 z_two(double r, const Vec2& y, int side = 0) {
  if (side > 0 || (side == 0 && y.x >= 0.0)) {
    const Vec2 d = y - Vec2{r, 0.0};
    const double n2 = dot(d, d);
    if (n2 <= r * r) return -d / r;
    return (-r / n2) * d;
  }
  const Vec2 d = y + Vec2{r, 0.0};
  const double n2 = dot(d, d);
  if (n2 <= r * r) return d / r;
  return (r / n2) * d;
}

double div_two(double r, const Vec2& y) {
  if (y.x >= 0.0) return dot(y - Vec2{r, 0.0}, y - Vec2{r, 0.0}) <= r * r ? -2.0 / r : 0.0;
  return dot(y + Vec2{r, 0.0}, y + Vec2{r, 0.0}) <= r * r ? 2.0 / r : 0.0;
}

// Four-disk fields: reflected copies of the two-disk ones across y2 = 0.
template <class F>
auto four_from_two(const Vec2& y, double r, F&& f, int side = 0) {
  if (side > 0 || (side == 0 && y.y >= 0.0)) return f(y - Vec2{0.0, r});
  return -f(y + Vec2{0.0, r});
}

Vec2 rotate_back(const BenchmarkSpec& spec, const Vec2& z) {
  const double c = std::cos(spec.phi);
  const double s = std::sin(spec.phi);
  return {c * z.x - s * z.y, s * z.x + c * z.y};
}

}  // namespace

Vec2 BenchmarkSpec::normal() const { return {std::cos(phi), std::sin(phi)}; }
Vec2 BenchmarkSpec::tangent() const { return {-std::sin(phi), std::cos(phi)}; }

Vec2 BenchmarkSpec::to_reference(const Vec2& x) const {
  const Vec2 d = x - shift;
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  return {c * d.x + s * d.y, -s * d.x + c * d.y};
}

Vec2 BenchmarkSpec::to_world(const Vec2& y) const {
  const double c = std::cos(phi);
  const double s = std::sin(phi);
  return shift + Vec2{c * y.x - s * y.y, s * y.x + c * y.y};
}

std::vector<std::pair<Vec2, double>> BenchmarkSpec::disks() const {
  std::vector<std::pair<Vec2, double>> ref;
  if (kind == BenchmarkKind::TwoDisk) {
    ref = {{{r, 0.0}, 1.0}, {{-r, 0.0}, -1.0}};
  } else {
    ref = {{{r, r}, 1.0}, {{-r, -r}, 1.0}, {{r, -r}, -1.0}, {{-r, r}, -1.0}};
  }
  for (auto& [c, sign] : ref) c = to_world(c);
  return ref;
}

void BenchmarkSpec::validate() const {
  if (!(r > 0.0)) throw std::invalid_argument("benchmark: r must be positive");
  if (!(alpha > 0.0)) throw std::invalid_argument("benchmark: alpha must be positive");
  if (!(alpha * r > 2.0))
    throw std::invalid_argument("benchmark: need alpha*r > 2 (got " + std::to_string(alpha * r) + ")");
  if (!std::isfinite(phi) || !std::isfinite(shift.x) || !std::isfinite(shift.y))
    throw std::invalid_argument("benchmark: phi and shift must be finite");
  for (const auto& [c, sign] : disks()) {
    if (std::abs(c.x) + r >= 1.0 || std::abs(c.y) + r >= 1.0)
      throw std::invalid_argument("benchmark: a disk leaves the domain (-1,1)^2");
  }
}

double primal_coefficient(const BenchmarkSpec& spec) { return std::max(0.0, 1.0 - 2.0 / (spec.alpha * spec.r)); }

double data_g(const BenchmarkSpec& spec, const Vec2& x) {
  const Vec2 y = spec.to_reference(x);
  if (spec.kind == BenchmarkKind::TwoDisk) return g_two(spec.r, y);
  return four_from_two(y, spec.r, [&](const Vec2& q) { return g_two(spec.r, q); });
}

double exact_primal(const BenchmarkSpec& spec, const Vec2& x) { return primal_coefficient(spec) * data_g(spec, x); }

Vec2 exact_dual(const BenchmarkSpec& spec, const Vec2& x) {
  const Vec2 y = spec.to_reference(x);
  if (spec.kind == BenchmarkKind::TwoDisk) return rotate_back(spec, z_two(spec.r, y));
  return rotate_back(spec, four_from_two(y, spec.r, [&](const Vec2& q) { return z_two(spec.r, q); }));
}

double dual_divergence(const BenchmarkSpec& spec, const Vec2& x) {
  const Vec2 y = spec.to_reference(x);
  if (spec.kind == BenchmarkKind::TwoDisk) return div_two(spec.r, y);
  return four_from_two(y, spec.r, [&](const Vec2& q) { return div_two(spec.r, q); });
}

Vec2 exact_dual_one_sided(const BenchmarkSpec& spec, const JumpLine& line, const Vec2& x, double sign) {
  const Vec2 y = spec.to_reference(x);
  const int s = sign > 0.0 ? 1 : -1;
  const double dn = dot(line.normal, spec.normal());
  const double dt = dot(line.normal, spec.tangent());
  // The line is y1 = 0 or y2 = 0 in reference coordinates.
  int side1 = 0;
  int side2 = 0;
  if (std::abs(dn) >= std::abs(dt)) {
    side1 = dn > 0.0 ? s : -s;
  } else {
    side2 = dt > 0.0 ? s : -s;
  }
  if (spec.kind == BenchmarkKind::TwoDisk) return rotate_back(spec, z_two(spec.r, y, side1));
  return rotate_back(spec, four_from_two(y, spec.r, [&](const Vec2& q) { return z_two(spec.r, q, side1); }, side2));
}

std::vector<JumpLine> jump_lines(const BenchmarkSpec& spec) {
  std::vector<JumpLine> lines{make_jump_line(spec.shift, spec.normal())};
  if (spec.kind == BenchmarkKind::FourDisk) lines.push_back(make_jump_line(spec.shift, spec.tangent()));
  return lines;
}

double distance_to_singular_set(const BenchmarkSpec& spec, const Vec2& x) {
  double d = std::numeric_limits<double>::infinity();
  for (const JumpLine& line : jump_lines(spec)) d = std::min(d, std::abs(line.side_of(x)));
  for (const auto& [c, sign] : spec.disks()) d = std::min(d, std::abs(norm(x - c) - spec.r));
  return d;
}

double optimality_residual(const BenchmarkSpec& spec, std::span<const Vec2> points) {
  double worst = 0.0;
  for (const Vec2& x : points) {
    const double res = dual_divergence(spec, x) - spec.alpha * (exact_primal(spec, x) - data_g(spec, x));
    worst = std::max(worst, std::abs(res));
  }
  return worst;
}

double exact_total_variation(const BenchmarkSpec& spec) {
  const double disks = spec.kind == BenchmarkKind::TwoDisk ? 2.0 : 4.0;
  return primal_coefficient(spec) * disks * 2.0 * std::numbers::pi * spec.r;
}

}  // namespace roflab

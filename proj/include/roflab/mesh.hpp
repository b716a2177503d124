#pragma once

#include <array>
#include <iosfwd>
#include <vector>

#include "roflab/geometry.hpp"

namespace roflab {

/// Conforming triangulation of a polygonal domain with side/element adjacency.
///
/// Local numbering: side i of a triangle is the side opposite its local
/// vertex i. Every side carries a global unit normal n_S that points out of
/// triangles_of_side(s)[0] (the lower-indexed neighbour) into
/// triangles_of_side(s)[1]; on the boundary it is the outward normal of the
/// domain. The mesh is immutable after construction.
class Mesh {
 public:
  static constexpr int kNoTriangle = -1;

  /// Builds adjacency and geometry. Triangles are reoriented counter-clockwise.
  Mesh(std::vector<Vec2> vertices, std::vector<std::array<int, 3>> triangles);

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_triangles() const { return static_cast<int>(triangles_.size()); }
  int num_sides() const { return static_cast<int>(sides_.size()); }

  const std::vector<Vec2>& vertices() const { return vertices_; }
  const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }
  /// Sorted vertex pair of every side.
  const std::vector<std::array<int, 2>>& sides() const { return sides_; }

  const Vec2& vertex(int v) const;
  const std::array<int, 3>& triangle(int t) const;
  Triangle triangle_points(int t) const;

  /// Side indices of triangle t, side i opposite local vertex i.
  const std::array<int, 3>& sides_of_triangle(int t) const;
  /// {T-, T+}; T+ is kNoTriangle for boundary sides.
  const std::array<int, 2>& triangles_of_side(int s) const;
  bool is_boundary(int s) const;

  /// +1 if n_S is the outward normal of t on its local side i, -1 otherwise.
  double side_sign(int t, int i) const;

  double area(int t) const;
  Vec2 barycenter(int t) const;
  double diameter(int t) const;

  Vec2 side_midpoint(int s) const;
  double side_length(int s) const;
  Vec2 side_normal(int s) const;
  std::array<Vec2, 2> side_endpoints(int s) const;

  double h_max() const { return h_max_; }
  double total_area() const;

  /// Plain-text dump: `v x y` per vertex, `t i j k` per triangle.
  void write_text(std::ostream& os) const;

 private:
  void check_triangle(int t) const;
  void check_side(int s) const;

  std::vector<Vec2> vertices_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<std::array<int, 2>> sides_;
  std::vector<std::array<int, 3>> side_of_triangle_;
  std::vector<std::array<int, 2>> triangles_of_side_;

  std::vector<double> area_;
  std::vector<Vec2> barycenter_;
  std::vector<double> diameter_;
  std::vector<Vec2> side_midpoint_;
  std::vector<double> side_length_;
  std::vector<Vec2> side_normal_;
  double h_max_ = 0.0;
};

/// Two-triangle mesh of (-1,1)^2 split along the (-1,-1)--(1,1) diagonal.
Mesh initial_square_mesh();

/// Splits every triangle into four congruent children through edge midpoints.
Mesh red_refine(const Mesh& m);

/// initial_square_mesh() refined `level` times.
Mesh square_mesh(int level);

}  // namespace roflab

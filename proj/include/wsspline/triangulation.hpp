#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "wsspline/geometry.hpp"

namespace wsspline {

struct MeshEdge {
  int a = 0;  // a < b
  int b = 0;
  std::vector<int> triangles;
};

/// Conforming triangulation with counterclockwise triangles.
class Triangulation {
 public:
  /// 0-based vertex ids. Clockwise triangles are reordered.
  /// Throws ErrorKind::degenerate, ErrorKind::nonconforming or ErrorKind::invalid_argument.
  Triangulation(std::vector<Point> vertices, std::vector<std::array<int, 3>> triangles);

  const std::vector<Point>& vertices() const { return vertices_; }
  const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }
  const std::vector<MeshEdge>& edges() const { return edges_; }
  int n_vertices() const { return static_cast<int>(vertices_.size()); }
  int n_triangles() const { return static_cast<int>(triangles_.size()); }
  int n_edges() const { return static_cast<int>(edges_.size()); }

  const Triangle& geometry(int t) const { return geometry_[t]; }
  /// Edge ids of triangle t; entry k is the edge opposite local vertex k.
  const std::array<int, 3>& triangle_edges(int t) const { return tri_edges_[t]; }
  const std::vector<int>& vertex_triangles(int v) const { return vertex_tris_[v]; }
  /// Edge id joining two vertices, or -1.
  int find_edge(int a, int b) const;
  bool is_boundary_edge(int e) const { return edges_[e].triangles.size() == 1; }
  int reoriented_count() const { return reoriented_; }
  /// Longest edge.
  double mesh_size() const { return mesh_size_; }

  /// Lowest-id triangle whose closure contains p (bary tolerance 1e-12), or -1.
  int locate(Point p) const;

  /// FNV-1a hash of the vertex coordinates and triangle ids.
  uint64_t hash() const;

 private:
  std::vector<Point> vertices_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<Triangle> geometry_;
  std::vector<MeshEdge> edges_;
  std::vector<std::array<int, 3>> tri_edges_;
  std::vector<std::vector<int>> vertex_tris_;
  int reoriented_ = 0;
  double mesh_size_ = 0.0;
};

Triangulation single_triangle_mesh(const Triangle& tri);
/// Unit square split into n x n squares, each cut along its diagonal.
Triangulation structured_square_mesh(int n, Point origin = {0.0, 0.0}, double size = 1.0);
/// Each triangle split into four through edge midpoints.
Triangulation uniform_refine(const Triangulation& mesh);

}  // namespace wsspline

#include "wsspline/triangulation.hpp"

#include <algorithm>
#include <cstring>
#include <map>
#include <string>

#include "wsspline/error.hpp"

namespace wsspline {

Triangulation::Triangulation(std::vector<Point> vertices, std::vector<std::array<int, 3>> triangles)
    : vertices_(std::move(vertices)), triangles_(std::move(triangles)) {
  const int nv = n_vertices();
  if (triangles_.empty()) fail(ErrorKind::invalid_argument, "mesh has no triangles");
  for (const Point& p : vertices_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) fail(ErrorKind::invalid_argument, "vertex is not finite");
  }
  {
    std::vector<Point> sorted = vertices_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      fail(ErrorKind::nonconforming, "duplicate vertex coordinates");
    }
  }
  vertex_tris_.resize(nv);
  std::map<std::pair<int, int>, int> edge_id;
  for (int t = 0; t < n_triangles(); ++t) {
    auto& tri = triangles_[t];
    for (int v : tri) {
      if (v < 0 || v >= nv) fail(ErrorKind::invalid_argument, "triangle " + std::to_string(t + 1) + " references a missing vertex");
    }
    if (tri[0] == tri[1] || tri[1] == tri[2] || tri[0] == tri[2]) {
      fail(ErrorKind::degenerate, "triangle " + std::to_string(t + 1) + " repeats a vertex");
    }
    Triangle g(vertices_[tri[0]], vertices_[tri[1]], vertices_[tri[2]]);
    if (g.reoriented()) {
      std::swap(tri[1], tri[2]);
      ++reoriented_;
    }
    geometry_.push_back(g);
    std::array<int, 3> te{};
    for (int k = 0; k < 3; ++k) {
      int a = tri[(k + 1) % 3];
      int b = tri[(k + 2) % 3];
      if (a > b) std::swap(a, b);
      auto [it, inserted] = edge_id.try_emplace({a, b}, static_cast<int>(edges_.size()));
      if (inserted) edges_.push_back({a, b, {}});
      edges_[it->second].triangles.push_back(t);
      if (edges_[it->second].triangles.size() > 2) {
        fail(ErrorKind::nonconforming, "edge shared by more than two triangles");
      }
      te[k] = it->second;
      mesh_size_ = std::max(mesh_size_, norm(vertices_[b] - vertices_[a]));
    }
    tri_edges_.push_back(te);
    for (int v : tri) vertex_tris_[v].push_back(t);
  }
  for (int v = 0; v < nv; ++v) {
    if (vertex_tris_[v].empty()) fail(ErrorKind::invalid_argument, "vertex " + std::to_string(v + 1) + " is unused");
  }
  // Interior edges must separate their triangles.
  for (const MeshEdge& e : edges_) {
    if (e.triangles.size() != 2) continue;
    auto third = [&](int t) {
      for (int v : triangles_[t]) {
        if (v != e.a && v != e.b) return vertices_[v];
      }
      return vertices_[e.a];
    };
    const double s1 = orient2d(vertices_[e.a], vertices_[e.b], third(e.triangles[0]));
    const double s2 = orient2d(vertices_[e.a], vertices_[e.b], third(e.triangles[1]));
    if (!(s1 * s2 < 0.0)) fail(ErrorKind::nonconforming, "triangles overlap across an edge");
  }
  // No vertex may lie inside another edge.
  for (const MeshEdge& e : edges_) {
    const Point a = vertices_[e.a];
    const Point b = vertices_[e.b];
    const double len = norm(b - a);
    for (int v = 0; v < nv; ++v) {
      if (v == e.a || v == e.b) continue;
      const Point p = vertices_[v];
      if (std::abs(orient2d(a, b, p)) > 1e-12 * len * len) continue;
      const double t = dot(p - a, b - a) / (len * len);
      if (t > 0.0 && t < 1.0) fail(ErrorKind::nonconforming, "T-junction at vertex " + std::to_string(v + 1));
    }
  }
  // Vertex stars must be edge-connected, and the mesh connected.
  auto connected = [&](const std::vector<int>& tris, int pivot) {
    std::vector<int> seen{tris.front()};
    for (size_t q = 0; q < seen.size(); ++q) {
      for (int e : tri_edges_[seen[q]]) {
        if (pivot >= 0 && edges_[e].a != pivot && edges_[e].b != pivot) continue;
        for (int t : edges_[e].triangles) {
          if (std::find(tris.begin(), tris.end(), t) == tris.end()) continue;
          if (std::find(seen.begin(), seen.end(), t) == seen.end()) seen.push_back(t);
        }
      }
    }
    return seen.size() == tris.size();
  };
  for (int v = 0; v < nv; ++v) {
    if (!connected(vertex_tris_[v], v)) {
      fail(ErrorKind::nonconforming, "triangles around vertex " + std::to_string(v + 1) + " are not edge-connected");
    }
  }
  std::vector<int> all(n_triangles());
  for (int t = 0; t < n_triangles(); ++t) all[t] = t;
  if (!connected(all, -1)) fail(ErrorKind::nonconforming, "mesh is not connected");
}

int Triangulation::find_edge(int a, int b) const {
  if (a > b) std::swap(a, b);
  for (int t : vertex_tris_[a]) {
    for (int e : tri_edges_[t]) {
      if (edges_[e].a == a && edges_[e].b == b) return e;
    }
  }
  return -1;
}

int Triangulation::locate(Point p) const {
  for (int t = 0; t < n_triangles(); ++t) {
    if (geometry_[t].contains(p, 1e-12)) return t;
  }
  return -1;
}

uint64_t Triangulation::hash() const {
  uint64_t h = 14695981039346656037ull;
  auto mix = [&h](const void* data, size_t n) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (size_t i = 0; i < n; ++i) {
      h ^= bytes[i];
      h *= 1099511628211ull;
    }
  };
  for (const Point& p : vertices_) {
    mix(&p.x, sizeof(double));
    mix(&p.y, sizeof(double));
  }
  for (const auto& t : triangles_) {
    for (int v : t) {
      const int32_t x = v;
      mix(&x, sizeof(x));
    }
  }
  return h;
}

Triangulation single_triangle_mesh(const Triangle& tri) {
  return Triangulation({tri[0], tri[1], tri[2]}, {{0, 1, 2}});
}

Triangulation structured_square_mesh(int n, Point origin, double size) {
  if (n < 1) fail(ErrorKind::invalid_argument, "grid size must be positive");
  std::vector<Point> v;
  for (int j = 0; j <= n; ++j) {
    for (int i = 0; i <= n; ++i) v.push_back({origin.x + size * i / n, origin.y + size * j / n});
  }
  std::vector<std::array<int, 3>> t;
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int a = j * (n + 1) + i;
      const int b = a + 1;
      const int c = a + n + 1;
      const int d = c + 1;
      t.push_back({a, b, d});
      t.push_back({a, d, c});
    }
  }
  return Triangulation(std::move(v), std::move(t));
}

Triangulation uniform_refine(const Triangulation& mesh) {
  std::vector<Point> v = mesh.vertices();
  std::vector<int> mid(mesh.n_edges());
  for (int e = 0; e < mesh.n_edges(); ++e) {
    const MeshEdge& me = mesh.edges()[e];
    mid[e] = static_cast<int>(v.size());
    v.push_back(0.5 * (v[me.a] + v[me.b]));
  }
  std::vector<std::array<int, 3>> t;
  for (int k = 0; k < mesh.n_triangles(); ++k) {
    const auto& tri = mesh.triangles()[k];
    const auto& te = mesh.triangle_edges(k);
    // te[k] is opposite vertex k.
    const int m0 = mid[te[0]], m1 = mid[te[1]], m2 = mid[te[2]];
    t.push_back({tri[0], m2, m1});
    t.push_back({m2, tri[1], m0});
    t.push_back({m1, m0, tri[2]});
    t.push_back({m0, m1, m2});
  }
  return Triangulation(std::move(v), std::move(t));
}

}  // namespace wsspline

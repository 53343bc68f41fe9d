#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include "wsspline/geometry.hpp"

namespace wsspline {

/// Homogeneous integer barycentric coordinates; the point is v / (v0+v1+v2).
using BaryInt = std::array<int64_t, 3>;

/// Per-line sign bits of a point, one bit per interior line (bit set = positive side).
using SignKey = std::array<uint64_t, 3>;

struct SignKeyHash {
  size_t operator()(const SignKey& k) const noexcept;
};

inline constexpr int max_split_lines = 192;

/// Exact combinatorics of a WS_d split, independent of the triangle's shape.
struct SplitArrangement {
  int degree = 0;
  /// Boundary points scaled by degree: integer triples summing to degree.
  std::vector<BaryInt> boundary_points;
  /// Interior lines as integer functionals on barycentric coordinates,
  /// with the index pair of the boundary points they join.
  std::vector<BaryInt> lines;
  std::vector<std::array<int, 2>> line_endpoints;
  /// Arrangement vertices, normalized (gcd 1, positive sum), sorted.
  std::vector<BaryInt> vertices;
  /// Number of interior lines through each vertex.
  std::vector<int> vertex_line_count;
  /// Counterclockwise vertex loops into `vertices`.
  std::vector<std::vector<int>> cells;
  /// Exact per-line sign bits of each cell's interior.
  std::vector<SignKey> cell_signs;
};

/// Cached arrangement for degree d (built once per process).
const SplitArrangement& split_arrangement(int d);

struct CrossCutStats {
  int m = 0;
  struct InteriorVertex {
    Point point;
    int multiplicity = 0;
  };
  std::vector<InteriorVertex> interior_vertices;
};

class WsSplit {
 public:
  WsSplit(const Triangle& tri, int d);

  int degree() const { return arr_->degree; }
  const Triangle& triangle() const { return tri_; }
  const SplitArrangement& arrangement() const { return *arr_; }

  const std::vector<Point>& boundary_points() const { return boundary_points_; }
  const std::vector<LineEq>& interior_lines() const { return lines_; }
  const std::vector<Point>& vertices() const { return vertices_; }
  /// Vertex loops (ids into vertices()).
  const std::vector<std::vector<int>>& cell_polygons() const { return arr_->cells; }
  int cell_count() const { return static_cast<int>(arr_->cells.size()); }
  /// Sign key of each cell with respect to interior_lines().
  const std::vector<SignKey>& cell_keys() const { return keys_; }
  /// A point strictly inside each cell.
  const std::vector<Point>& cell_interior_points() const { return interior_points_; }

  /// Sign key of p; values within the tie tolerance count as positive.
  SignKey sign_key(Point p) const;
  /// Cell id for a key, or -1.
  int cell_of_key(const SignKey& key) const;

  /// Cell containing p; on-line points resolve by the tie rule.
  /// Throws ErrorKind::out_of_domain outside the closed triangle.
  int locate(Point p) const;

  /// Sign of each line's orientation relative to its barycentric functional.
  const std::vector<int8_t>& line_flips() const { return flips_; }
  double tie_tolerance() const { return tie_tol_; }

  CrossCutStats crosscut_stats() const;

 private:
  int fallback_cell(Point p) const;

  Triangle tri_;
  const SplitArrangement* arr_;
  std::vector<Point> boundary_points_;
  std::vector<LineEq> lines_;
  std::vector<int8_t> flips_;
  std::vector<Point> vertices_;
  std::vector<SignKey> keys_;
  std::vector<Point> interior_points_;
  std::unordered_map<SignKey, int, SignKeyHash> key_to_cell_;
  double tie_tol_ = 0.0;
};

int64_t binomial(int n, int k);

/// Dimension of C^r degree-d splines on a cross-cut partition.
/// Throws ErrorKind::invalid_argument unless 0 <= r <= d-1 (d = 0 allowed only with no cuts).
int64_t crosscut_dimension(int d, int r, const CrossCutStats& stats);

/// Dimension of C^{d-1} degree-d splines on the WS_d split.
int64_t ws_dimension(int d);

}  // namespace wsspline

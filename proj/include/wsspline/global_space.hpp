#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include <Eigen/Dense>

#include "wsspline/edge_smoothness.hpp"
#include "wsspline/local_basis.hpp"
#include "wsspline/triangulation.hpp"

namespace wsspline {

enum class MdsKind { vertex, edge, triangle };

struct MdsEntry {
  int triangle = 0;
  /// Stored (0-based) B-tilde index in the owning triangle.
  int index = 0;
  MdsKind kind = MdsKind::vertex;
  /// Vertex, edge or triangle id the entry belongs to.
  int element = 0;
};

struct MinimalDeterminingSet {
  std::vector<MdsEntry> entries;
  std::vector<int> vertex_owner;
  std::vector<int> edge_owner;
  int size() const { return static_cast<int>(entries.size()); }
};

/// Canonical alt-indices (0-based) attached to vertex p1, edge p1p2 and the triangle.
const std::array<int, 6>& vertex_class();
const std::array<int, 3>& edge_class();

/// Stored indices of the vertex class of local vertex k.
std::array<int, 6> vertex_class_of(int k);
/// Stored indices of the edge class of the edge between local vertices k and l.
std::array<int, 3> edge_class_of(int k, int l);

int64_t dimension(const Triangulation& mesh);
MinimalDeterminingSet build_mds(const Triangulation& mesh);

/// Nodal data: vertex 2-jets (f, fx, fy, fxx, fxy, fyy); per edge (a < b) the
/// derivative along the unit left normal of b - a at the midpoint and the second
/// normal derivatives at 2/3 a + 1/3 b and 1/3 a + 2/3 b; centroid values.
struct GlobalHermiteData {
  std::vector<std::array<double, 6>> vertex;
  std::vector<std::array<double, 3>> edge;
  std::vector<double> triangle;
};

class GlobalSpline;

struct StabilityReport {
  /// Empirical lower constant: min of ||s||_inf / ||c||_inf over random MDS value
  /// vectors, global ones and ones supported on the entries of a single triangle.
  /// Upper constant: max over the sample sites of the sum of |global basis values|.
  double k_minus = 0.0;
  double k_plus = 0.0;
  /// max over triangles of ||s|_T||_inf / ||btilde_T||_inf.
  double alt_ratio_max = 0.0;
  /// min over triangles of ||s|_T||_inf / ||b_T||_inf.
  double b_ratio_min = 0.0;
};

/// The space S_3^2 on the WS_3 refinement of a triangulation.
class SplineSpace {
 public:
  explicit SplineSpace(Triangulation mesh);

  const Triangulation& mesh() const { return data_->mesh; }
  const LocalBasis& basis(int t) const { return data_->bases[t]; }
  const MinimalDeterminingSet& mds() const { return data_->mds; }
  int64_t dimension() const { return data_->mds.size(); }

  /// Spline with the given MDS values. Throws ErrorKind::dimension_mismatch or
  /// ErrorKind::propagation_conflict.
  GlobalSpline propagate(const std::vector<double>& values) const;
  GlobalSpline basis_function(int entry) const;

  /// MDS values read from per-triangle coefficients (any tag).
  std::vector<double> mds_values(const std::vector<LocalCoeffs>& coeffs) const;

  /// Per-triangle Hermite problem data from nodal data.
  BasisValues local_hermite_data(int t, const GlobalHermiteData& data) const;
  GlobalHermiteData sample_hermite(const std::function<Jet(Point)>& f) const;
  GlobalSpline fit(const GlobalHermiteData& data) const;
  GlobalSpline fit(const std::function<Jet(Point)>& f) const;

  /// Max verify_smoothness discrepancy (order 2) over interior edges.
  double max_smoothness_residual(const GlobalSpline& s, int samples = 50) const;

  /// All cross-edge constraints as rows over stored B-tilde coefficients (28 per triangle).
  Eigen::MatrixXd constraint_matrix() const;
  /// Columns are the propagated coefficient vectors of the unit MDS values.
  Eigen::MatrixXd propagation_matrix() const;

  StabilityReport stability_probe(int trials, int lattice, uint64_t seed) const;

 private:
  struct Data {
    Triangulation mesh;
    std::vector<LocalBasis> bases;
    MinimalDeterminingSet mds;
  };
  std::shared_ptr<const Data> data_;
  friend class GlobalSpline;
};

class GlobalSpline {
 public:
  GlobalSpline(SplineSpace space, std::vector<LocalCoeffs> coeffs);

  const SplineSpace& space() const { return space_; }
  /// B-tilde coefficients per triangle in stored numbering.
  const std::vector<LocalCoeffs>& coeffs() const { return coeffs_; }
  std::vector<LocalCoeffs>& mutable_coeffs() { return coeffs_; }

  /// Throws ErrorKind::out_of_domain outside the mesh.
  double eval(Point p) const;
  Jet eval_jet(Point p) const;
  double eval_in(int t, Point p) const;

 private:
  SplineSpace space_;
  std::vector<LocalCoeffs> coeffs_;
};

/// Rank of a matrix by SVD with relative threshold.
int numerical_rank(const Eigen::MatrixXd& m, double rel_tol = 1e-9);

}  // namespace wsspline

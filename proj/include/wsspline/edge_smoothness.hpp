#pragma once

#include <array>
#include <utility>
#include <vector>

#include "wsspline/local_basis.hpp"

namespace wsspline {

/// Two triangles sharing an edge, labeled so the left triangle reads
/// (p1, p2, p3) and the right one (p1, p2, p4) with p4 = eta1 p1 + eta2 p2 + eta3 p3.
struct SharedEdge {
  int left = 0;
  int right = 1;
  /// Canonical vertex k of each side is its stored vertex perm[k].
  VertexPerm left_perm{0, 1, 2};
  VertexPerm right_perm{0, 1, 2};
  /// Canonical basis index i of each side is its stored index index[i].
  std::array<int, n_basis> left_index{};
  std::array<int, n_basis> right_index{};
  std::array<double, 3> eta{};
};

/// Builds the canonical labeling for triangles given by stored vertex ids
/// and geometry (vertex order matching the ids). a becomes p1, b becomes p2.
/// Throws ErrorKind::not_shared if either triangle lacks a or b.
SharedEdge canonicalize_edge(const std::array<int, 3>& left_ids, const Triangle& left_tri,
                             const std::array<int, 3>& right_ids, const Triangle& right_tri, int a, int b);

enum class Side { left, right };

/// A coefficient addressed in canonical numbering (0-based index).
struct CoeffRef {
  Side side = Side::left;
  BasisTag tag = BasisTag::b;
  int index = 0;
};

/// target := sum of coefficient * source.
struct SmoothnessConstraint {
  int order = 0;
  CoeffRef target;
  std::vector<std::pair<CoeffRef, double>> sources;
};

std::vector<SmoothnessConstraint> c0_constraints(const SharedEdge& edge);
std::vector<SmoothnessConstraint> c1_constraints(const SharedEdge& edge);
/// The two B-tilde targets come last.
std::vector<SmoothnessConstraint> c2_constraints(const SharedEdge& edge);
/// Orders 0, 1, 2 concatenated.
std::vector<SmoothnessConstraint> all_constraints(const SharedEdge& edge);

/// Coefficient of either side from stored coefficient vectors.
double coefficient(const SharedEdge& edge, const LocalCoeffs& left, const LocalCoeffs& right, const CoeffRef& ref);

/// Right-hand side of a constraint.
double constraint_value(const SharedEdge& edge, const SmoothnessConstraint& c, const LocalCoeffs& left,
                        const LocalCoeffs& right);

/// Right coefficients (B-tilde, stored order) determined from left ones by all 15
/// constraints; unconstrained entries are copied from `right_free`.
LocalCoeffs propagate_across(const SharedEdge& edge, const LocalCoeffs& left, const LocalCoeffs& right_free);

struct SmoothnessReport {
  /// Max two-sided discrepancy of values, gradients (times h) and Hessians (times h^2),
  /// divided by max(1, largest coefficient magnitude).
  std::array<double, 3> by_order{};
  double up_to(int order) const;
};

/// Samples `samples` interior points of the segment [a, b] from both sides.
SmoothnessReport verify_smoothness(const LocalBasis& lb, const LocalCoeffs& sl, const LocalBasis& rb,
                                   const LocalCoeffs& sr, Point a, Point b, int samples = 50);

}  // namespace wsspline

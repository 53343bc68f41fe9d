#pragma once

#include <array>
#include <functional>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <boost/rational.hpp>

#include "wsspline/bary_cubic.hpp"
#include "wsspline/geometry.hpp"
#include "wsspline/knot_layout.hpp"
#include "wsspline/simplex_spline.hpp"
#include "wsspline/ws_split.hpp"

namespace wsspline {

enum class BasisTag { b, b_tilde };

struct LocalCoeffs {
  std::array<double, n_basis> values{};
  BasisTag tag = BasisTag::b;
};

using BasisValues = std::array<double, n_basis>;
using BasisJets = std::array<Jet, n_basis>;
using Matrix28 = Eigen::Matrix<double, n_basis, n_basis>;
using Rational = boost::rational<int64_t>;
using RationalMatrix28 = std::array<std::array<Rational, n_basis>, n_basis>;

/// A point functional: value (order 0), D_u (order 1) or D_u D_v (order 2) at site.
struct HermiteOp {
  Point site;
  int order = 0;
  Vec2 u;
  Vec2 v;

  double apply(const Jet& j) const;
};

/// Nonzero polynomial pieces of the B basis on each cell of the WS_3 arrangement,
/// in barycentric form (identical for every triangle).
struct PieceTable {
  std::vector<std::vector<std::pair<int, BaryCubic>>> cells;
};

const PieceTable& piece_table();

/// Matrix G with Btilde_i = sum_j G_ij B_j.
const RationalMatrix28& alt_basis_matrix_exact();
/// C with btilde = C b, and its inverse.
const RationalMatrix28& conversion_matrix_exact();
const RationalMatrix28& conversion_inverse_exact();
const Matrix28& conversion_matrix();
const Matrix28& conversion_inverse();
Rational inf_norm(const RationalMatrix28& m);

/// Switches the coefficient tag, keeping the represented function.
LocalCoeffs convert(const LocalCoeffs& coeffs);
LocalCoeffs with_tag(const LocalCoeffs& coeffs, BasisTag tag);

struct ControlNet {
  std::array<Point, n_basis> sites;
  std::array<double, n_basis> heights{};
  /// Triangles and quadrilaterals over 0-based indices, counterclockwise.
  const std::vector<std::vector<int>>* faces = nullptr;
};

const std::vector<std::vector<int>>& control_net_faces();

class LocalBasis {
 public:
  explicit LocalBasis(const Triangle& tri);

  const Triangle& triangle() const { return split_.triangle(); }
  const WsSplit& split() const { return split_; }
  const BasisValues& weights() const { return weights_; }
  const std::array<Point, n_basis>& domain_points() const { return domain_points_; }
  const std::array<Point, n_basis>& alt_domain_points() const { return alt_domain_points_; }
  std::array<Point, n_knot_points> knot_points() const;
  KnotMultiset knots(int i) const;

  /// Basis values at p (closed triangle; otherwise ErrorKind::out_of_domain).
  BasisValues eval(Point p, BasisTag tag = BasisTag::b) const;
  BasisJets eval_jets(Point p, BasisTag tag = BasisTag::b) const;
  double eval(const LocalCoeffs& coeffs, Point p) const;
  Jet eval_jet(const LocalCoeffs& coeffs, Point p) const;
  /// Same as eval but on a given cell, for callers that located p already.
  BasisValues eval_in_cell(int cell, const Bary& b) const;

  /// w_i M_i(p) via the recurrence.
  double eval_recurrence(int i, Point p, OnLinePolicy policy = OnLinePolicy::perturb) const;

  /// The 34 functionals rho_1..rho_34.
  std::array<HermiteOp, 34> hermite_ops() const;
  /// The 28 functionals of the Hermite problem: vertex 2-jets (f, fx, fy,
  /// fxx, fxy, fyy per vertex), inward normal derivatives at edge midpoints,
  /// second normal derivatives at the edge knots, the centroid value.
  std::array<HermiteOp, n_basis> hermite_problem_ops() const;

  /// Entry (i, j) = rho_j applied to basis function i; 28 x 34.
  Eigen::MatrixXd hermite_matrix(BasisTag tag = BasisTag::b) const;
  /// Hermite problem data of a function given by its jet.
  BasisValues hermite_data(const std::function<Jet(Point)>& f) const;
  /// B-tagged coefficients matching the 28 Hermite problem values.
  LocalCoeffs hermite_interpolate(const BasisValues& data) const;

  BasisValues marsden_duals(Vec2 y) const;

  /// ||A^{-1}||_inf for the collocation matrix A_ji = B_i(xi_j).
  double collocation_condition() const;

  ControlNet control_net(const LocalCoeffs& coeffs) const;

  /// Per-cell cubic of sum b_i B_i.
  std::vector<BaryCubic> combined_pieces(const LocalCoeffs& coeffs) const;

 private:
  WsSplit split_;
  BasisValues weights_{};
  std::array<Point, n_basis> domain_points_;
  std::array<Point, n_basis> alt_domain_points_;
};

}  // namespace wsspline

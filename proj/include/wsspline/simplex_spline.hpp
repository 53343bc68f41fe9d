#pragma once

#include <utility>
#include <vector>

#include "wsspline/geometry.hpp"

namespace wsspline {

/// Knots of a bivariate simplex spline; repeated points encode multiplicity.
class KnotMultiset {
 public:
  /// Throws ErrorKind::invalid_argument for fewer than 3 knots and
  /// ErrorKind::degenerate when the convex hull has zero area.
  explicit KnotMultiset(std::vector<Point> knots);

  const std::vector<Point>& knots() const { return knots_; }
  int degree() const { return static_cast<int>(knots_.size()) - 3; }
  /// Longest distance between two knots.
  double scale() const { return scale_; }

 private:
  std::vector<Point> knots_;
  double scale_ = 0.0;
};

enum class OnLinePolicy { error, perturb };

/// M(p) by the B-recurrence. Points on a knot line either raise
/// ErrorKind::on_knot_line or are nudged by 1e-9 * scale off the line.
double eval_m(const KnotMultiset& knots, Point p, OnLinePolicy policy = OnLinePolicy::perturb);

/// Directional derivative D_dir M(p) by the A-recurrence.
double eval_m_derivative(const KnotMultiset& knots, Point p, Vec2 dir,
                         OnLinePolicy policy = OnLinePolicy::perturb);

/// Second directional derivative D_u D_v M(p) (A-recurrence applied twice).
double eval_m_second_derivative(const KnotMultiset& knots, Point p, Vec2 u, Vec2 v,
                                OnLinePolicy policy = OnLinePolicy::perturb);

/// Polynomial piece of M that is active around `ref`, evaluated at p.
/// `ref` must not lie on a knot line; p is arbitrary.
double eval_m_piece(const KnotMultiset& knots, Point ref, Point p);

/// Knot insertion: M_knots = sum c_i M_{knots with knot i replaced by y}.
/// Terms with zero coefficient are omitted.
std::vector<std::pair<double, KnotMultiset>> insert_knot(const KnotMultiset& knots, Point y);

/// True when p lies within tol of a line through two distinct knots.
bool on_knot_line(const KnotMultiset& knots, Point p, double tol);

}  // namespace wsspline

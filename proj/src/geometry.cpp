#include "wsspline/geometry.hpp"

#include <algorithm>

#include "wsspline/error.hpp"

namespace wsspline {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid argument";
    case ErrorKind::degenerate: return "degenerate geometry";
    case ErrorKind::out_of_domain: return "point outside domain";
    case ErrorKind::on_knot_line: return "point on knot line";
    case ErrorKind::nonconforming: return "nonconforming mesh";
    case ErrorKind::not_shared: return "edge not shared";
    case ErrorKind::propagation_conflict: return "propagation conflict";
    case ErrorKind::numerical_singularity: return "numerical singularity";
    case ErrorKind::dimension_mismatch: return "dimension mismatch";
    case ErrorKind::hash_mismatch: return "hash mismatch";
    case ErrorKind::parse: return "parse error";
  }
  return "unknown";
}

Bary bary_coords(Point a, Point b, Point c, Point p) {
  const double det = orient2d(a, b, c);
  const double l2 = orient2d(a, p, c) / det;
  const double l3 = orient2d(a, b, p) / det;
  const double l1 = orient2d(p, b, c) / det;
  return {l1, l2, l3};
}

LineEq LineEq::normalized(double a, double b, double c) {
  const double n = std::hypot(a, b);
  if (!(n > 0.0)) fail(ErrorKind::degenerate, "line with zero normal");
  a /= n;
  b /= n;
  c /= n;
  if (a < 0.0 || (a == 0.0 && b < 0.0)) {
    a = -a;
    b = -b;
    c = -c;
  }
  return {a, b, c};
}

LineEq LineEq::through(Point p, Point q) {
  const Vec2 d = q - p;
  return normalized(-d.y, d.x, d.y * p.x - d.x * p.y);
}

Triangle::Triangle(Point p1, Point p2, Point p3) {
  for (const Point& p : {p1, p2, p3}) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      fail(ErrorKind::invalid_argument, "triangle vertex is not finite");
    }
  }
  diameter_ = std::max({norm(p2 - p1), norm(p3 - p2), norm(p1 - p3)});
  double twice = orient2d(p1, p2, p3);
  if (!(std::abs(twice) > 1e-14 * diameter_ * diameter_)) {
    fail(ErrorKind::degenerate, "triangle vertices are collinear");
  }
  if (twice < 0.0) {
    std::swap(p2, p3);
    twice = -twice;
    reoriented_ = true;
  }
  vertices_ = {p1, p2, p3};
  area_ = 0.5 * twice;
  // grad(beta_k) = perp(p_{k+2} - p_{k+1}) / (2 area), rotated into the triangle.
  for (int k = 0; k < 3; ++k) {
    const Vec2 e = vertices_[(k + 2) % 3] - vertices_[(k + 1) % 3];
    grads_[k] = {-e.y / twice, e.x / twice};
  }
}

Bary Triangle::to_bary(Point p) const {
  return bary_coords(vertices_[0], vertices_[1], vertices_[2], p);
}

Point Triangle::from_bary(const Bary& b) const {
  return {b.b1 * vertices_[0].x + b.b2 * vertices_[1].x + b.b3 * vertices_[2].x,
          b.b1 * vertices_[0].y + b.b2 * vertices_[1].y + b.b3 * vertices_[2].y};
}

Vec2 Triangle::inward_normal(int k) const {
  const Vec2 g = grads_[k];
  const double n = norm(g);
  return {g.x / n, g.y / n};
}

bool Triangle::contains(Point p, double tol) const {
  const Bary b = to_bary(p);
  return b.b1 >= -tol && b.b2 >= -tol && b.b3 >= -tol;
}

}  // namespace wsspline

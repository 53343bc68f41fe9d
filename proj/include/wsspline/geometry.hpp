#pragma once

#include <array>
#include <cmath>

namespace wsspline {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend constexpr bool operator==(Point a, Point b) { return a.x == b.x && a.y == b.y; }
  friend constexpr auto operator<=>(Point a, Point b) = default;
};

// Directions and displacements share the representation of points.
using Vec2 = Point;

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

/// Twice the signed area of (a, b, c); positive when counterclockwise.
constexpr double orient2d(Point a, Point b, Point c) { return cross(b - a, c - a); }

struct Bary {
  double b1 = 0.0;
  double b2 = 0.0;
  double b3 = 0.0;

  constexpr double operator[](int k) const { return k == 0 ? b1 : (k == 1 ? b2 : b3); }
  constexpr double sum() const { return b1 + b2 + b3; }
};

/// Barycentric coordinates of p with respect to (a, b, c); either orientation.
Bary bary_coords(Point a, Point b, Point c, Point p);

/// Affine line a*x + b*y + c with a^2 + b^2 = 1 and the first nonzero of
/// (a, b) positive.
struct LineEq {
  double a = 1.0;
  double b = 0.0;
  double c = 0.0;

  double operator()(Point p) const { return a * p.x + b * p.y + c; }

  /// Builds the normalized line from an arbitrary nonzero (a, b, c).
  static LineEq normalized(double a, double b, double c);
  /// Line through two distinct points.
  static LineEq through(Point p, Point q);
};

class Triangle {
 public:
  /// Throws ErrorKind::degenerate for (near) collinear vertices. Clockwise
  /// input is reindexed by swapping p2 and p3; reoriented() reports it.
  Triangle(Point p1, Point p2, Point p3);

  const Point& operator[](int k) const { return vertices_[k]; }
  const std::array<Point, 3>& vertices() const { return vertices_; }
  double area() const { return area_; }
  /// Length of the longest edge.
  double diameter() const { return diameter_; }
  bool reoriented() const { return reoriented_; }

  Bary to_bary(Point p) const;
  Point from_bary(const Bary& b) const;
  Point centroid() const { return from_bary({1.0 / 3, 1.0 / 3, 1.0 / 3}); }

  /// Cartesian gradients of the three barycentric coordinate functions.
  const std::array<Vec2, 3>& bary_gradients() const { return grads_; }

  /// Unit normal of the edge opposite vertex k, pointing into the triangle.
  Vec2 inward_normal(int k) const;

  /// True if p lies in the closed triangle up to tol (in barycentric units).
  bool contains(Point p, double tol = 1e-12) const;

 private:
  std::array<Point, 3> vertices_;
  std::array<Vec2, 3> grads_;
  double area_ = 0.0;
  double diameter_ = 0.0;
  bool reoriented_ = false;
};

/// Barycentric coordinates of p; pre: tri is valid (checked at construction).
inline Bary to_bary(const Triangle& tri, Point p) { return tri.to_bary(p); }

}  // namespace wsspline

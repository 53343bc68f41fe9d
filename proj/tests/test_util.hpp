#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "wsspline/geometry.hpp"

namespace test_util {

using wsspline::Point;
using wsspline::Triangle;

/// Random triangle with vertices in [-2, 2]^2 and not too flat.
inline Triangle random_triangle(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (;;) {
    const Point a{u(rng), u(rng)}, b{u(rng), u(rng)}, c{u(rng), u(rng)};
    const double area2 = std::abs(wsspline::orient2d(a, b, c));
    const double d = std::max({wsspline::norm(b - a), wsspline::norm(c - b), wsspline::norm(a - c)});
    if (area2 > 0.05 * d * d) return Triangle(a, b, c);
  }
}

inline Point random_point_in(const Triangle& t, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double s = u(rng), r = u(rng);
  if (s + r > 1.0) {
    s = 1.0 - s;
    r = 1.0 - r;
  }
  return t.from_bary({1.0 - s - r, s, r});
}

inline Triangle reference_triangle() { return Triangle({0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}); }

}  // namespace test_util

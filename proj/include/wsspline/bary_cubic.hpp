#pragma once

#include <array>

#include "wsspline/geometry.hpp"

namespace wsspline {

/// Symmetric 2x2 matrix.
struct Hessian {
  double xx = 0.0;
  double xy = 0.0;
  double yy = 0.0;

  /// u^T H v.
  double apply(Vec2 u, Vec2 v) const {
    return u.x * (xx * v.x + xy * v.y) + u.y * (xy * v.x + yy * v.y);
  }
};

/// Value, gradient and Hessian of a function at a point.
struct Jet {
  double value = 0.0;
  Vec2 grad;
  Hessian hess;
};

/// Exponents (a, b, c) of the monomials b1^a b2^b b3^c, in storage order.
inline constexpr std::array<std::array<int, 3>, 10> cubic_exponents{{
    {3, 0, 0}, {2, 1, 0}, {2, 0, 1}, {1, 2, 0}, {1, 1, 1},
    {1, 0, 2}, {0, 3, 0}, {0, 2, 1}, {0, 1, 2}, {0, 0, 3},
}};

/// Homogeneous cubic in barycentric coordinates.
struct BaryCubic {
  std::array<double, 10> c{};

  double eval(const Bary& b) const;
  /// Partial derivatives with respect to b1, b2, b3.
  std::array<double, 3> gradient(const Bary& b) const;
  /// Second partials ordered (11, 12, 13, 22, 23, 33).
  std::array<double, 6> hessian(const Bary& b) const;

  BaryCubic& operator+=(const BaryCubic& o) {
    for (int k = 0; k < 10; ++k) c[k] += o.c[k];
    return *this;
  }
  BaryCubic& axpy(double s, const BaryCubic& o) {
    for (int k = 0; k < 10; ++k) c[k] += s * o.c[k];
    return *this;
  }
};

/// Cubic interpolating values at the lattice points exponents/3, in storage order.
BaryCubic fit_cubic_on_lattice(const std::array<double, 10>& values);

/// Cartesian jet from barycentric derivatives and the gradients of b1, b2, b3.
Jet cartesian_jet(const BaryCubic& p, const Bary& b, const std::array<Vec2, 3>& grads);

}  // namespace wsspline

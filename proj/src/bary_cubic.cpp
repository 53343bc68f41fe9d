#include "wsspline/bary_cubic.hpp"

#include <Eigen/Dense>

namespace wsspline {

double BaryCubic::eval(const Bary& b) const {
  const double x = b.b1, y = b.b2, z = b.b3;
  return x * x * (c[0] * x + c[1] * y + c[2] * z) + y * y * (c[3] * x + c[6] * y + c[7] * z) +
         z * z * (c[5] * x + c[8] * y + c[9] * z) + c[4] * x * y * z;
}

std::array<double, 3> BaryCubic::gradient(const Bary& b) const {
  const double x = b.b1, y = b.b2, z = b.b3;
  return {
      3 * c[0] * x * x + 2 * c[1] * x * y + 2 * c[2] * x * z + c[3] * y * y + c[4] * y * z + c[5] * z * z,
      c[1] * x * x + 2 * c[3] * x * y + c[4] * x * z + 3 * c[6] * y * y + 2 * c[7] * y * z + c[8] * z * z,
      c[2] * x * x + c[4] * x * y + 2 * c[5] * x * z + c[7] * y * y + 2 * c[8] * y * z + 3 * c[9] * z * z,
  };
}

std::array<double, 6> BaryCubic::hessian(const Bary& b) const {
  const double x = b.b1, y = b.b2, z = b.b3;
  return {
      6 * c[0] * x + 2 * c[1] * y + 2 * c[2] * z,
      2 * c[1] * x + 2 * c[3] * y + c[4] * z,
      2 * c[2] * x + c[4] * y + 2 * c[5] * z,
      2 * c[3] * x + 6 * c[6] * y + 2 * c[7] * z,
      c[4] * x + 2 * c[7] * y + 2 * c[8] * z,
      2 * c[5] * x + 2 * c[8] * y + 6 * c[9] * z,
  };
}

BaryCubic fit_cubic_on_lattice(const std::array<double, 10>& values) {
  static const Eigen::Matrix<double, 10, 10> inverse = [] {
    Eigen::Matrix<double, 10, 10> v;
    for (int i = 0; i < 10; ++i) {
      for (int j = 0; j < 10; ++j) {
        double m = 1.0;
        for (int k = 0; k < 3; ++k) {
          for (int e = 0; e < cubic_exponents[j][k]; ++e) m *= cubic_exponents[i][k] / 3.0;
        }
        v(i, j) = m;
      }
    }
    return Eigen::Matrix<double, 10, 10>(v.fullPivLu().inverse());
  }();
  Eigen::Matrix<double, 10, 1> rhs;
  for (int i = 0; i < 10; ++i) rhs(i) = values[i];
  const Eigen::Matrix<double, 10, 1> sol = inverse * rhs;
  BaryCubic out;
  for (int i = 0; i < 10; ++i) out.c[i] = sol(i);
  return out;
}

Jet cartesian_jet(const BaryCubic& p, const Bary& b, const std::array<Vec2, 3>& g) {
  Jet j;
  j.value = p.eval(b);
  const auto d = p.gradient(b);
  for (int k = 0; k < 3; ++k) {
    j.grad.x += d[k] * g[k].x;
    j.grad.y += d[k] * g[k].y;
  }
  const auto h = p.hessian(b);
  const double hm[3][3] = {{h[0], h[1], h[2]}, {h[1], h[3], h[4]}, {h[2], h[4], h[5]}};
  for (int k = 0; k < 3; ++k) {
    for (int l = 0; l < 3; ++l) {
      j.hess.xx += hm[k][l] * g[k].x * g[l].x;
      j.hess.xy += hm[k][l] * g[k].x * g[l].y;
      j.hess.yy += hm[k][l] * g[k].y * g[l].y;
    }
  }
  return j;
}

}  // namespace wsspline

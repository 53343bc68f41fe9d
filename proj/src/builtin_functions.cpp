#include "wsspline/builtin_functions.hpp"

#include <cmath>
#include <random>

#include "wsspline/error.hpp"

namespace wsspline {

Jet Cubic2::operator()(Point p) const {
  const double x = p.x, y = p.y;
  Jet j;
  j.value = c[0] + c[1] * x + c[2] * y + c[3] * x * x + c[4] * x * y + c[5] * y * y + c[6] * x * x * x +
            c[7] * x * x * y + c[8] * x * y * y + c[9] * y * y * y;
  j.grad.x = c[1] + 2 * c[3] * x + c[4] * y + 3 * c[6] * x * x + 2 * c[7] * x * y + c[8] * y * y;
  j.grad.y = c[2] + c[4] * x + 2 * c[5] * y + c[7] * x * x + 2 * c[8] * x * y + 3 * c[9] * y * y;
  j.hess.xx = 2 * c[3] + 6 * c[6] * x + 2 * c[7] * y;
  j.hess.xy = c[4] + 2 * c[7] * x + 2 * c[8] * y;
  j.hess.yy = 2 * c[5] + 2 * c[8] * x + 6 * c[9] * y;
  return j;
}

Cubic2 random_cubic(uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  Cubic2 c;
  for (double& x : c.c) x = d(rng);
  return c;
}

namespace {

// Franke's test function with exact derivatives.
Jet franke(Point p) {
  const double x = p.x, y = p.y;
  Jet j;
  // a * exp(-(9x - x0)^2 / sx - (9y - y0)^2 / sy)
  auto add_gauss = [&](double a, double sx, double x0, double sy, double y0) {
    const double u = 9 * x - x0;
    const double v = 9 * y - y0;
    const double g = a * std::exp(-u * u / sx - v * v / sy);
    const double gu = -2 * u / sx * 9;
    const double gv = -2 * v / sy * 9;
    j.value += g;
    j.grad.x += g * gu;
    j.grad.y += g * gv;
    j.hess.xx += g * (gu * gu - 2 * 81 / sx);
    j.hess.xy += g * gu * gv;
    j.hess.yy += g * (gv * gv - 2 * 81 / sy);
  };
  add_gauss(0.75, 4.0, 2.0, 4.0, 2.0);
  add_gauss(0.5, 4.0, 7.0, 4.0, 3.0);
  add_gauss(-0.2, 1.0, 4.0, 1.0, 7.0);
  // 0.75 exp(-(9x+1)^2/49 - (9y+1)/10)
  const double u = 9 * x + 1;
  const double g = 0.75 * std::exp(-u * u / 49.0 - (9 * y + 1) / 10.0);
  const double gu = -2 * u / 49.0 * 9;
  const double gv = -0.9;
  j.value += g;
  j.grad.x += g * gu;
  j.grad.y += g * gv;
  j.hess.xx += g * (gu * gu - 2 * 81 / 49.0);
  j.hess.xy += g * gu * gv;
  j.hess.yy += g * gv * gv;
  return j;
}

}  // namespace

JetFunction builtin_function(const std::string& name, uint64_t seed) {
  if (name == "one") return [](Point) { return Jet{1.0, {}, {}}; };
  if (name == "x") return [](Point p) { return Jet{p.x, {1.0, 0.0}, {}}; };
  if (name == "y") return [](Point p) { return Jet{p.y, {0.0, 1.0}, {}}; };
  if (name == "x3") {
    return [](Point p) { return Jet{p.x * p.x * p.x, {3 * p.x * p.x, 0.0}, {6 * p.x, 0.0, 0.0}}; };
  }
  if (name == "cubic") return random_cubic(seed);
  if (name == "franke") return franke;
  fail(ErrorKind::invalid_argument, "unknown builtin function '" + name + "'");
}

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names{"one", "x", "y", "x3", "cubic", "franke"};
  return names;
}

}  // namespace wsspline

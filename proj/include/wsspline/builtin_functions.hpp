#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "wsspline/bary_cubic.hpp"

namespace wsspline {

using JetFunction = std::function<Jet(Point)>;

/// Cubic sum c[k] x^i y^j over i + j <= 3, ordered 1, x, y, x^2, xy, y^2, x^3, x^2y, xy^2, y^3.
struct Cubic2 {
  std::array<double, 10> c{};
  Jet operator()(Point p) const;
};

Cubic2 random_cubic(uint64_t seed);

/// Names: one, x, y, x3, cubic (seeded), franke.
JetFunction builtin_function(const std::string& name, uint64_t seed = 1);
const std::vector<std::string>& builtin_names();

}  // namespace wsspline

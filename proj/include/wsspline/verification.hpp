#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "wsspline/triangulation.hpp"

namespace wsspline {

struct SuiteResult {
  std::string name;
  bool pass = false;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string note;
};

struct VerifyOptions {
  uint64_t seed = 1;
  /// Points per triangle for the partition-of-unity and Marsden suites.
  int points = 2000;
  /// Adds 1 to one C2 target coefficient before the C2 suite (negative control).
  bool break_coefficient = false;
};

/// Runs partition-of-unity, marsden, hermite-tables, edge-restriction, condition
/// and c2-edges on every triangle / interior edge of the mesh.
std::vector<SuiteResult> run_verification(const Triangulation& mesh, const VerifyOptions& opt = {});

/// N_{i,deg}(t) over a nondecreasing knot vector, right-continuous except at the last knot.
double cox_de_boor(const std::vector<double>& knots, int i, int deg, double t);

/// B indices (0-based) that restrict to N_0..N_5 on the edge from local vertex k to l (k < l).
const std::array<int, 6>& edge_restriction_indices(int k, int l);

}  // namespace wsspline

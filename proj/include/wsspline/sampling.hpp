#pragma once

#include <vector>

#include "wsspline/global_space.hpp"
#include "wsspline/kernels.hpp"

namespace wsspline {

struct GridSample {
  double x = 0.0;
  double y = 0.0;
  double value = 0.0;
  int triangle = -1;
  /// Lattice position.
  int i = 0;
  int j = 0;
};

/// n x n lattice over the mesh bounding box, keeping the points inside the mesh.
/// Uses the batched kernels; at most `threads` workers (0 reads WS_SPLINES_THREADS).
std::vector<GridSample> sample_grid(const GlobalSpline& s, int n, int threads = 0,
                                    kernels::Isa isa = kernels::active_isa());

/// Batched evaluation of s at points known to lie in triangle t.
void eval_batch(const GlobalSpline& s, int t, const double* xs, const double* ys, size_t count, double* out,
                kernels::Isa isa = kernels::active_isa());

int sampling_threads();

}  // namespace wsspline

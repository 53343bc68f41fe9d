#include "wsspline/sampling.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>

#include "wsspline/error.hpp"

namespace wsspline {

int sampling_threads() {
  int n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("WS_SPLINES_THREADS")) {
    try {
      const int cap = std::stoi(env);
      if (cap >= 1) n = std::min(n, cap);
    } catch (const std::exception&) {
      // Ignored: an unreadable cap leaves the default.
    }
  }
  return n;
}

void eval_batch(const GlobalSpline& s, int t, const double* xs, const double* ys, size_t count, double* out,
                kernels::Isa isa) {
  const LocalBasis& lb = s.space().basis(t);
  const std::vector<BaryCubic> pieces = lb.combined_pieces(s.coeffs()[t]);
  std::vector<int32_t> cells(count);
  std::vector<double> b1(count), b2(count), b3(count);
  kernels::locate_batch(lb.split(), xs, ys, count, cells.data(), isa);
  kernels::bary_coords(kernels::bary_affine(lb.triangle()), xs, ys, count, b1.data(), b2.data(), b3.data(), isa);
  kernels::eval_cubics(pieces.data(), cells.data(), b1.data(), b2.data(), b3.data(), count, out, isa);
}

std::vector<GridSample> sample_grid(const GlobalSpline& s, int n, int threads, kernels::Isa isa) {
  if (n < 2) fail(ErrorKind::invalid_argument, "grid needs at least 2 points per axis");
  const Triangulation& mesh = s.space().mesh();
  double x0 = mesh.vertices()[0].x, x1 = x0, y0 = mesh.vertices()[0].y, y1 = y0;
  for (const Point& p : mesh.vertices()) {
    x0 = std::min(x0, p.x);
    x1 = std::max(x1, p.x);
    y0 = std::min(y0, p.y);
    y1 = std::max(y1, p.y);
  }
  std::vector<GridSample> pts;
  std::vector<std::vector<size_t>> by_tri(mesh.n_triangles());
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const Point p{x0 + (x1 - x0) * i / (n - 1), y0 + (y1 - y0) * j / (n - 1)};
      const int t = mesh.locate(p);
      if (t < 0) continue;
      by_tri[t].push_back(pts.size());
      pts.push_back({p.x, p.y, 0.0, t, i, j});
    }
  }
  if (threads <= 0) threads = sampling_threads();
  threads = std::max(1, std::min(threads, mesh.n_triangles()));
  std::atomic<int> next{0};
  auto work = [&]() {
    std::vector<double> xs, ys, vals;
    for (int t = next++; t < mesh.n_triangles(); t = next++) {
      const auto& ids = by_tri[t];
      if (ids.empty()) continue;
      xs.resize(ids.size());
      ys.resize(ids.size());
      vals.resize(ids.size());
      for (size_t k = 0; k < ids.size(); ++k) {
        xs[k] = pts[ids[k]].x;
        ys[k] = pts[ids[k]].y;
      }
      eval_batch(s, t, xs.data(), ys.data(), ids.size(), vals.data(), isa);
      for (size_t k = 0; k < ids.size(); ++k) pts[ids[k]].value = vals[k];
    }
  };
  std::vector<std::thread> pool;
  for (int k = 1; k < threads; ++k) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  return pts;
}

}  // namespace wsspline

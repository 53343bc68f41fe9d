#include <cstdlib>
#include <cstring>
#include <vector>

#include "wsspline/error.hpp"
#include "wsspline/kernels.hpp"

namespace wsspline::kernels {

bool avx2_available() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa active_isa() {
  static const Isa isa = [] {
    const char* env = std::getenv("WS_SPLINES_ISA");
    if (env != nullptr && std::strcmp(env, "scalar") == 0) return Isa::scalar;
    return avx2_available() ? Isa::avx2 : Isa::scalar;
  }();
  return isa;
}

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

namespace {
bool use_avx2(Isa isa) { return isa == Isa::avx2 && avx2_available(); }
}  // namespace

BaryAffine bary_affine(const Triangle& tri) {
  BaryAffine f;
  const auto& g = tri.bary_gradients();
  for (int k = 0; k < 3; ++k) {
    const Point& base = tri[(k + 1) % 3];
    f.gx[k] = g[k].x;
    f.gy[k] = g[k].y;
    f.h[k] = -(g[k].x * base.x + g[k].y * base.y);
  }
  return f;
}

void sign_keys(const LineBatch& lines, double tol, const double* xs, const double* ys, size_t n, uint64_t* out,
               Isa isa) {
  if (lines.count > 64) fail(ErrorKind::invalid_argument, "sign_keys supports at most 64 lines");
  if (use_avx2(isa)) {
    detail::sign_keys_avx2(lines, tol, xs, ys, n, out);
  } else {
    detail::sign_keys_scalar(lines, tol, xs, ys, n, out);
  }
}

void bary_coords(const BaryAffine& affine, const double* xs, const double* ys, size_t n, double* b1, double* b2,
                 double* b3, Isa isa) {
  if (use_avx2(isa)) {
    detail::bary_coords_avx2(affine, xs, ys, n, b1, b2, b3);
  } else {
    detail::bary_coords_scalar(affine, xs, ys, n, b1, b2, b3);
  }
}

void eval_cubics(const BaryCubic* pieces, const int32_t* cell, const double* b1, const double* b2, const double* b3,
                 size_t n, double* out, Isa isa) {
  if (use_avx2(isa)) {
    detail::eval_cubics_avx2(pieces, cell, b1, b2, b3, n, out);
  } else {
    detail::eval_cubics_scalar(pieces, cell, b1, b2, b3, n, out);
  }
}

void locate_batch(const WsSplit& split, const double* xs, const double* ys, size_t n, int32_t* cells, Isa isa) {
  const auto& lines = split.interior_lines();
  if (lines.size() > 64) {
    for (size_t i = 0; i < n; ++i) cells[i] = split.locate({xs[i], ys[i]});
    return;
  }
  std::vector<double> a(lines.size()), b(lines.size()), c(lines.size());
  for (size_t l = 0; l < lines.size(); ++l) {
    a[l] = lines[l].a;
    b[l] = lines[l].b;
    c[l] = lines[l].c;
  }
  std::vector<uint64_t> keys(n);
  sign_keys({a.data(), b.data(), c.data(), static_cast<int>(lines.size())}, split.tie_tolerance(), xs, ys, n,
            keys.data(), isa);
  for (size_t i = 0; i < n; ++i) {
    const int cell = split.cell_of_key({keys[i], 0, 0});
    cells[i] = cell >= 0 ? cell : split.locate({xs[i], ys[i]});
  }
}

}  // namespace wsspline::kernels

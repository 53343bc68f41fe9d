#include "wsspline/kernels.hpp"

namespace wsspline::kernels::detail {

void sign_keys_scalar(const LineBatch& lines, double tol, const double* xs, const double* ys, size_t n,
                      uint64_t* out) {
  const double neg_tol = -tol;
  for (size_t i = 0; i < n; ++i) {
    uint64_t key = 0;
    for (int l = 0; l < lines.count; ++l) {
      const double v = lines.a[l] * xs[i] + lines.b[l] * ys[i] + lines.c[l];
      if (v >= neg_tol) key |= uint64_t{1} << l;
    }
    out[i] = key;
  }
}

void bary_coords_scalar(const BaryAffine& f, const double* xs, const double* ys, size_t n, double* b1, double* b2,
                        double* b3) {
  double* out[3] = {b1, b2, b3};
  for (size_t i = 0; i < n; ++i) {
    for (int k = 0; k < 3; ++k) out[k][i] = f.gx[k] * xs[i] + f.gy[k] * ys[i] + f.h[k];
  }
}

void eval_cubics_scalar(const BaryCubic* pieces, const int32_t* cell, const double* b1, const double* b2,
                        const double* b3, size_t n, double* out) {
  for (size_t i = 0; i < n; ++i) out[i] = pieces[cell[i]].eval({b1[i], b2[i], b3[i]});
}

}  // namespace wsspline::kernels::detail

#include <immintrin.h>

#include "wsspline/kernels.hpp"

// Mirrors the scalar kernels operation by operation (no fused multiply-add),
// so results are bit-identical.

namespace wsspline::kernels::detail {

void sign_keys_avx2(const LineBatch& lines, double tol, const double* xs, const double* ys, size_t n,
                    uint64_t* out) {
  const __m256d neg_tol = _mm256_set1_pd(-tol);
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_loadu_pd(xs + i);
    const __m256d y = _mm256_loadu_pd(ys + i);
    uint64_t key[4] = {0, 0, 0, 0};
    for (int l = 0; l < lines.count; ++l) {
      const __m256d v = _mm256_add_pd(
          _mm256_add_pd(_mm256_mul_pd(_mm256_set1_pd(lines.a[l]), x), _mm256_mul_pd(_mm256_set1_pd(lines.b[l]), y)),
          _mm256_set1_pd(lines.c[l]));
      const int mask = _mm256_movemask_pd(_mm256_cmp_pd(v, neg_tol, _CMP_GE_OQ));
      for (int k = 0; k < 4; ++k) key[k] |= static_cast<uint64_t>((mask >> k) & 1) << l;
    }
    for (int k = 0; k < 4; ++k) out[i + k] = key[k];
  }
  if (i < n) sign_keys_scalar(lines, tol, xs + i, ys + i, n - i, out + i);
}

void bary_coords_avx2(const BaryAffine& f, const double* xs, const double* ys, size_t n, double* b1, double* b2,
                      double* b3) {
  double* out[3] = {b1, b2, b3};
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_loadu_pd(xs + i);
    const __m256d y = _mm256_loadu_pd(ys + i);
    for (int k = 0; k < 3; ++k) {
      const __m256d v = _mm256_add_pd(
          _mm256_add_pd(_mm256_mul_pd(_mm256_set1_pd(f.gx[k]), x), _mm256_mul_pd(_mm256_set1_pd(f.gy[k]), y)),
          _mm256_set1_pd(f.h[k]));
      _mm256_storeu_pd(out[k] + i, v);
    }
  }
  if (i < n) bary_coords_scalar(f, xs + i, ys + i, n - i, b1 + i, b2 + i, b3 + i);
}

void eval_cubics_avx2(const BaryCubic* pieces, const int32_t* cell, const double* b1, const double* b2,
                      const double* b3, size_t n, double* out) {
  const double* base = pieces[0].c.data();
  static_assert(sizeof(BaryCubic) == 10 * sizeof(double));
  size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m128i idx = _mm_mullo_epi32(_mm_loadu_si128(reinterpret_cast<const __m128i*>(cell + i)), _mm_set1_epi32(10));
    __m256d c[10];
    for (int k = 0; k < 10; ++k) c[k] = _mm256_i32gather_pd(base + k, idx, 8);
    const __m256d x = _mm256_loadu_pd(b1 + i);
    const __m256d y = _mm256_loadu_pd(b2 + i);
    const __m256d z = _mm256_loadu_pd(b3 + i);
    auto lin = [&](int p, int q, int r) {
      return _mm256_add_pd(_mm256_add_pd(_mm256_mul_pd(c[p], x), _mm256_mul_pd(c[q], y)), _mm256_mul_pd(c[r], z));
    };
    const __m256d t0 = _mm256_mul_pd(_mm256_mul_pd(x, x), lin(0, 1, 2));
    const __m256d t1 = _mm256_mul_pd(_mm256_mul_pd(y, y), lin(3, 6, 7));
    const __m256d t2 = _mm256_mul_pd(_mm256_mul_pd(z, z), lin(5, 8, 9));
    const __m256d t3 = _mm256_mul_pd(_mm256_mul_pd(_mm256_mul_pd(c[4], x), y), z);
    _mm256_storeu_pd(out + i, _mm256_add_pd(_mm256_add_pd(_mm256_add_pd(t0, t1), t2), t3));
  }
  if (i < n) eval_cubics_scalar(pieces, cell + i, b1 + i, b2 + i, b3 + i, n - i, out + i);
}

}  // namespace wsspline::kernels::detail

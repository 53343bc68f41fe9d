#pragma once

#include <cstddef>
#include <cstdint>

#include "wsspline/bary_cubic.hpp"
#include "wsspline/ws_split.hpp"

namespace wsspline::kernels {

enum class Isa { scalar, avx2 };

bool avx2_available();
/// AVX2 when the CPU has it, unless WS_SPLINES_ISA=scalar.
Isa active_isa();
const char* isa_name(Isa isa);

/// Up to 64 lines a*x + b*y + c in structure-of-arrays form.
struct LineBatch {
  const double* a = nullptr;
  const double* b = nullptr;
  const double* c = nullptr;
  int count = 0;
};

/// Barycentric coordinates as affine functions: beta_k = gx[k] x + gy[k] y + h[k].
struct BaryAffine {
  double gx[3] = {0, 0, 0};
  double gy[3] = {0, 0, 0};
  double h[3] = {0, 0, 0};
};

BaryAffine bary_affine(const Triangle& tri);

/// Bit l of out[i] is set when line l is >= -tol at point i.
void sign_keys(const LineBatch& lines, double tol, const double* xs, const double* ys, size_t n, uint64_t* out,
               Isa isa);

void bary_coords(const BaryAffine& affine, const double* xs, const double* ys, size_t n, double* b1, double* b2,
                 double* b3, Isa isa);

/// out[i] = pieces[cell[i]] evaluated at (b1[i], b2[i], b3[i]).
void eval_cubics(const BaryCubic* pieces, const int32_t* cell, const double* b1, const double* b2, const double* b3,
                 size_t n, double* out, Isa isa);

/// Cells of points inside the split's triangle; same result as WsSplit::locate.
void locate_batch(const WsSplit& split, const double* xs, const double* ys, size_t n, int32_t* cells, Isa isa);

namespace detail {
void sign_keys_scalar(const LineBatch&, double, const double*, const double*, size_t, uint64_t*);
void bary_coords_scalar(const BaryAffine&, const double*, const double*, size_t, double*, double*, double*);
void eval_cubics_scalar(const BaryCubic*, const int32_t*, const double*, const double*, const double*, size_t,
                        double*);
void sign_keys_avx2(const LineBatch&, double, const double*, const double*, size_t, uint64_t*);
void bary_coords_avx2(const BaryAffine&, const double*, const double*, size_t, double*, double*, double*);
void eval_cubics_avx2(const BaryCubic*, const int32_t*, const double*, const double*, const double*, size_t,
                      double*);
}  // namespace detail

}  // namespace wsspline::kernels

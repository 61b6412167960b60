#include "focklab/simd.hpp"

#ifdef FOCKLAB_NEON

#include <arm_neon.h>

#include "simd_detail.hpp"

// NEON backend.  float64x2 registers: 8 real lanes as four accumulators,
// 4 complex lanes as deinterleaved (re, im) accumulator pairs.  Only
// vmul/vadd/vsub are used (no fused ops), matching the scalar reference
// rounding-for-rounding.

namespace focklab::simd {

using detail::kCplxLanes;
using detail::kRealLanes;

namespace {
inline const double* dptr(const cplx* p) { return reinterpret_cast<const double*>(p); }
}  // namespace

double reduce_add_neon(std::span<const double> x) {
  float64x2_t acc[4] = {vdupq_n_f64(0.0), vdupq_n_f64(0.0), vdupq_n_f64(0.0),
                        vdupq_n_f64(0.0)};
  const std::size_t n = x.size();
  const std::size_t main = n - n % kRealLanes;
  for (std::size_t i = 0; i < main; i += kRealLanes)
    for (std::size_t r = 0; r < 4; ++r)
      acc[r] = vaddq_f64(acc[r], vld1q_f64(x.data() + i + 2 * r));
  double lanes[kRealLanes];
  for (std::size_t r = 0; r < 4; ++r) vst1q_f64(lanes + 2 * r, acc[r]);
  for (std::size_t j = 0; main + j < n; ++j) lanes[j] += x[main + j];
  return detail::fold_real(lanes);
}

double dot_neon(std::span<const double> a, std::span<const double> b) {
  float64x2_t acc[4] = {vdupq_n_f64(0.0), vdupq_n_f64(0.0), vdupq_n_f64(0.0),
                        vdupq_n_f64(0.0)};
  const std::size_t n = a.size();
  const std::size_t main = n - n % kRealLanes;
  for (std::size_t i = 0; i < main; i += kRealLanes)
    for (std::size_t r = 0; r < 4; ++r)
      acc[r] = vaddq_f64(acc[r], vmulq_f64(vld1q_f64(a.data() + i + 2 * r),
                                           vld1q_f64(b.data() + i + 2 * r)));
  double lanes[kRealLanes];
  for (std::size_t r = 0; r < 4; ++r) vst1q_f64(lanes + 2 * r, acc[r]);
  for (std::size_t j = 0; main + j < n; ++j) lanes[j] += a[main + j] * b[main + j];
  return detail::fold_real(lanes);
}

namespace {

struct CplxAcc {
  float64x2_t re = vdupq_n_f64(0.0);
  float64x2_t im = vdupq_n_f64(0.0);
};

// deinterleave two packed complex values into ([re0, re1], [im0, im1])
inline void load2(const cplx* p, float64x2_t& re, float64x2_t& im) {
  const float64x2_t z0 = vld1q_f64(reinterpret_cast<const double*>(p));
  const float64x2_t z1 = vld1q_f64(reinterpret_cast<const double*>(p + 1));
  re = vuzp1q_f64(z0, z1);
  im = vuzp2q_f64(z0, z1);
}

inline void store_lanes(cplx* lanes, const CplxAcc& a01, const CplxAcc& a23) {
  double re[4], im[4];
  vst1q_f64(re, a01.re);
  vst1q_f64(im, a01.im);
  vst1q_f64(re + 2, a23.re);
  vst1q_f64(im + 2, a23.im);
  for (int j = 0; j < 4; ++j) lanes[j] = {re[j], im[j]};
}

}  // namespace

cplx cdotc_neon(std::span<const cplx> a, std::span<const cplx> b) {
  CplxAcc a01, a23;
  const std::size_t n = a.size();
  const std::size_t main = n - n % kCplxLanes;
  for (std::size_t i = 0; i < main; i += kCplxLanes) {
    float64x2_t ar, ai, br, bi;
    load2(a.data() + i, ar, ai);
    load2(b.data() + i, br, bi);
    a01.re = vaddq_f64(a01.re, vaddq_f64(vmulq_f64(ar, br), vmulq_f64(ai, bi)));
    a01.im = vaddq_f64(a01.im, vsubq_f64(vmulq_f64(ai, br), vmulq_f64(ar, bi)));
    load2(a.data() + i + 2, ar, ai);
    load2(b.data() + i + 2, br, bi);
    a23.re = vaddq_f64(a23.re, vaddq_f64(vmulq_f64(ar, br), vmulq_f64(ai, bi)));
    a23.im = vaddq_f64(a23.im, vsubq_f64(vmulq_f64(ai, br), vmulq_f64(ar, bi)));
  }
  cplx lanes[kCplxLanes];
  store_lanes(lanes, a01, a23);
  for (std::size_t j = 0; main + j < n; ++j)
    lanes[j] += detail::conj_prod(a[main + j], b[main + j]);
  return detail::fold_cplx(lanes);
}

cplx weighted_sum_neon(std::span<const double> w, std::span<const cplx> f) {
  CplxAcc a01, a23;
  const std::size_t n = w.size();
  const std::size_t main = n - n % kCplxLanes;
  for (std::size_t i = 0; i < main; i += kCplxLanes) {
    float64x2_t fr, fi;
    load2(f.data() + i, fr, fi);
    float64x2_t wv = vld1q_f64(w.data() + i);
    a01.re = vaddq_f64(a01.re, vmulq_f64(wv, fr));
    a01.im = vaddq_f64(a01.im, vmulq_f64(wv, fi));
    load2(f.data() + i + 2, fr, fi);
    wv = vld1q_f64(w.data() + i + 2);
    a23.re = vaddq_f64(a23.re, vmulq_f64(wv, fr));
    a23.im = vaddq_f64(a23.im, vmulq_f64(wv, fi));
  }
  cplx lanes[kCplxLanes];
  store_lanes(lanes, a01, a23);
  for (std::size_t j = 0; main + j < n; ++j)
    lanes[j] += detail::scale_cplx(w[main + j], f[main + j]);
  return detail::fold_cplx(lanes);
}

cplx weighted_cdotc_neon(std::span<const double> w, std::span<const cplx> a,
                         std::span<const cplx> b) {
  CplxAcc a01, a23;
  const std::size_t n = w.size();
  const std::size_t main = n - n % kCplxLanes;
  for (std::size_t i = 0; i < main; i += kCplxLanes) {
    float64x2_t ar, ai, br, bi;
    load2(a.data() + i, ar, ai);
    load2(b.data() + i, br, bi);
    float64x2_t wv = vld1q_f64(w.data() + i);
    a01.re = vaddq_f64(
        a01.re, vmulq_f64(wv, vaddq_f64(vmulq_f64(ar, br), vmulq_f64(ai, bi))));
    a01.im = vaddq_f64(
        a01.im, vmulq_f64(wv, vsubq_f64(vmulq_f64(ai, br), vmulq_f64(ar, bi))));
    load2(a.data() + i + 2, ar, ai);
    load2(b.data() + i + 2, br, bi);
    wv = vld1q_f64(w.data() + i + 2);
    a23.re = vaddq_f64(
        a23.re, vmulq_f64(wv, vaddq_f64(vmulq_f64(ar, br), vmulq_f64(ai, bi))));
    a23.im = vaddq_f64(
        a23.im, vmulq_f64(wv, vsubq_f64(vmulq_f64(ai, br), vmulq_f64(ar, bi))));
  }
  cplx lanes[kCplxLanes];
  store_lanes(lanes, a01, a23);
  for (std::size_t j = 0; main + j < n; ++j)
    lanes[j] += detail::scale_cplx(w[main + j], detail::conj_prod(a[main + j], b[main + j]));
  return detail::fold_cplx(lanes);
}

}  // namespace focklab::simd

#endif  // FOCKLAB_NEON

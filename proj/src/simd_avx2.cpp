#include "focklab/simd.hpp"

#ifdef FOCKLAB_X86

#include <immintrin.h>

#include "simd_detail.hpp"

// AVX2 backend.  Mirrors the scalar lane schedule exactly: 8 real lanes as
// two 4-wide accumulators, 4 complex lanes as two registers of 2 complex
// each.  Only mul/add/xor are used (no FMA), so each lane performs the
// same rounding sequence as the scalar reference.

namespace focklab::simd {

using detail::kCplxLanes;
using detail::kRealLanes;

bool cpu_supports_avx2() { return __builtin_cpu_supports("avx2") != 0; }

namespace {

// sign mask that flips the imaginary slots of [re, im, re, im]
inline __m256d imag_sign_mask() {
  return _mm256_castsi256_pd(_mm256_set_epi64x(
      static_cast<long long>(0x8000000000000000ULL), 0,
      static_cast<long long>(0x8000000000000000ULL), 0));
}

// two a*conj(b) products on packed [re, im, re, im]
inline __m256d conj_prod2(__m256d va, __m256d vb) {
  const __m256d br = _mm256_movedup_pd(vb);           // [br, br, br, br]
  const __m256d bi = _mm256_permute_pd(vb, 0b1111);   // [bi, bi, bi, bi]
  const __m256d t1 = _mm256_mul_pd(va, br);           // [ar*br, ai*br, ...]
  const __m256d sw = _mm256_permute_pd(va, 0b0101);   // [ai, ar, ai, ar]
  const __m256d t2 = _mm256_mul_pd(sw, bi);           // [ai*bi, ar*bi, ...]
  const __m256d t2s = _mm256_xor_pd(t2, imag_sign_mask());
  return _mm256_add_pd(t1, t2s);  // [ar*br + ai*bi, ai*br - ar*bi, ...]
}

// [w0, w1] -> [w0, w0, w1, w1]
inline __m256d spread_weights(const double* w) {
  const __m256d lo = _mm256_castpd128_pd256(_mm_loadu_pd(w));
  return _mm256_permute4x64_pd(lo, 0x50);
}

inline const double* dptr(const cplx* p) { return reinterpret_cast<const double*>(p); }

}  // namespace

double reduce_add_avx2(std::span<const double> x) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  const std::size_t n = x.size();
  const std::size_t main = n - n % kRealLanes;
  for (std::size_t i = 0; i < main; i += kRealLanes) {
    acc0 = _mm256_add_pd(acc0, _mm256_loadu_pd(x.data() + i));
    acc1 = _mm256_add_pd(acc1, _mm256_loadu_pd(x.data() + i + 4));
  }
  double lanes[kRealLanes];
  _mm256_storeu_pd(lanes, acc0);
  _mm256_storeu_pd(lanes + 4, acc1);
  for (std::size_t j = 0; main + j < n; ++j) lanes[j] += x[main + j];
  return detail::fold_real(lanes);
}

double dot_avx2(std::span<const double> a, std::span<const double> b) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  const std::size_t n = a.size();
  const std::size_t main = n - n % kRealLanes;
  for (std::size_t i = 0; i < main; i += kRealLanes) {
    acc0 = _mm256_add_pd(
        acc0, _mm256_mul_pd(_mm256_loadu_pd(a.data() + i), _mm256_loadu_pd(b.data() + i)));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(_mm256_loadu_pd(a.data() + i + 4),
                                             _mm256_loadu_pd(b.data() + i + 4)));
  }
  double lanes[kRealLanes];
  _mm256_storeu_pd(lanes, acc0);
  _mm256_storeu_pd(lanes + 4, acc1);
  for (std::size_t j = 0; main + j < n; ++j) lanes[j] += a[main + j] * b[main + j];
  return detail::fold_real(lanes);
}

cplx cdotc_avx2(std::span<const cplx> a, std::span<const cplx> b) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  const std::size_t n = a.size();
  const std::size_t main = n - n % kCplxLanes;
  for (std::size_t i = 0; i < main; i += kCplxLanes) {
    acc0 = _mm256_add_pd(acc0, conj_prod2(_mm256_loadu_pd(dptr(a.data() + i)),
                                          _mm256_loadu_pd(dptr(b.data() + i))));
    acc1 = _mm256_add_pd(acc1, conj_prod2(_mm256_loadu_pd(dptr(a.data() + i + 2)),
                                          _mm256_loadu_pd(dptr(b.data() + i + 2))));
  }
  cplx lanes[kCplxLanes];
  _mm256_storeu_pd(reinterpret_cast<double*>(lanes), acc0);
  _mm256_storeu_pd(reinterpret_cast<double*>(lanes + 2), acc1);
  for (std::size_t j = 0; main + j < n; ++j)
    lanes[j] += detail::conj_prod(a[main + j], b[main + j]);
  return detail::fold_cplx(lanes);
}

cplx weighted_sum_avx2(std::span<const double> w, std::span<const cplx> f) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  const std::size_t n = w.size();
  const std::size_t main = n - n % kCplxLanes;
  for (std::size_t i = 0; i < main; i += kCplxLanes) {
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(spread_weights(w.data() + i),
                                             _mm256_loadu_pd(dptr(f.data() + i))));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(spread_weights(w.data() + i + 2),
                                             _mm256_loadu_pd(dptr(f.data() + i + 2))));
  }
  cplx lanes[kCplxLanes];
  _mm256_storeu_pd(reinterpret_cast<double*>(lanes), acc0);
  _mm256_storeu_pd(reinterpret_cast<double*>(lanes + 2), acc1);
  for (std::size_t j = 0; main + j < n; ++j)
    lanes[j] += detail::scale_cplx(w[main + j], f[main + j]);
  return detail::fold_cplx(lanes);
}

cplx weighted_cdotc_avx2(std::span<const double> w, std::span<const cplx> a,
                         std::span<const cplx> b) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  const std::size_t n = w.size();
  const std::size_t main = n - n % kCplxLanes;
  for (std::size_t i = 0; i < main; i += kCplxLanes) {
    const __m256d p0 = conj_prod2(_mm256_loadu_pd(dptr(a.data() + i)),
                                  _mm256_loadu_pd(dptr(b.data() + i)));
    const __m256d p1 = conj_prod2(_mm256_loadu_pd(dptr(a.data() + i + 2)),
                                  _mm256_loadu_pd(dptr(b.data() + i + 2)));
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(spread_weights(w.data() + i), p0));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(spread_weights(w.data() + i + 2), p1));
  }
  cplx lanes[kCplxLanes];
  _mm256_storeu_pd(reinterpret_cast<double*>(lanes), acc0);
  _mm256_storeu_pd(reinterpret_cast<double*>(lanes + 2), acc1);
  for (std::size_t j = 0; main + j < n; ++j)
    lanes[j] += detail::scale_cplx(w[main + j], detail::conj_prod(a[main + j], b[main + j]));
  return detail::fold_cplx(lanes);
}

}  // namespace focklab::simd

#endif  // FOCKLAB_X86

#pragma once

#include <complex>
#include <cstddef>

// Shared lane schedule for the reduction kernels.  This header is included
// only by the backend translation units, which are all compiled with
// -ffp-contract=off; keeping the tail and fold arithmetic here (instead of
// a public header) guarantees no caller can re-compile it with fused
// multiply-adds and break cross-backend bit-equivalence.

namespace focklab::simd::detail {

inline constexpr std::size_t kRealLanes = 8;
inline constexpr std::size_t kCplxLanes = 4;

// ((l0+l4)+(l2+l6)) + ((l1+l5)+(l3+l7)) — fixed tree, never reassociated.
inline double fold_real(const double l[kRealLanes]) {
  const double m0 = l[0] + l[4];
  const double m1 = l[1] + l[5];
  const double m2 = l[2] + l[6];
  const double m3 = l[3] + l[7];
  const double p0 = m0 + m2;
  const double p1 = m1 + m3;
  return p0 + p1;
}

inline std::complex<double> fold_cplx(const std::complex<double> l[kCplxLanes]) {
  const std::complex<double> s0 = l[0] + l[2];
  const std::complex<double> s1 = l[1] + l[3];
  return s0 + s1;
}

// One a*conj(b) term, spelled the way every backend must evaluate it.
inline std::complex<double> conj_prod(const std::complex<double>& a,
                                      const std::complex<double>& b) {
  const double re = a.real() * b.real() + a.imag() * b.imag();
  const double im = a.imag() * b.real() - a.real() * b.imag();
  return {re, im};
}

inline std::complex<double> scale_cplx(double w, const std::complex<double>& z) {
  return {w * z.real(), w * z.imag()};
}

}  // namespace focklab::simd::detail

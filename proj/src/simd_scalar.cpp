#include "focklab/simd.hpp"
#include "simd_detail.hpp"

// Reference implementations.  These define the exact arithmetic the vector
// backends must reproduce: striped lane accumulation, explicit non-fused
// products, fixed fold tree.

namespace focklab::simd {

using detail::kCplxLanes;
using detail::kRealLanes;

double reduce_add_scalar(std::span<const double> x) {
  double lanes[kRealLanes] = {};
  const std::size_t n = x.size();
  const std::size_t main = n - n % kRealLanes;
  for (std::size_t i = 0; i < main; i += kRealLanes)
    for (std::size_t j = 0; j < kRealLanes; ++j) lanes[j] += x[i + j];
  for (std::size_t j = 0; main + j < n; ++j) lanes[j] += x[main + j];
  return detail::fold_real(lanes);
}

double dot_scalar(std::span<const double> a, std::span<const double> b) {
  double lanes[kRealLanes] = {};
  const std::size_t n = a.size();
  const std::size_t main = n - n % kRealLanes;
  for (std::size_t i = 0; i < main; i += kRealLanes)
    for (std::size_t j = 0; j < kRealLanes; ++j) lanes[j] += a[i + j] * b[i + j];
  for (std::size_t j = 0; main + j < n; ++j) lanes[j] += a[main + j] * b[main + j];
  return detail::fold_real(lanes);
}

cplx cdotc_scalar(std::span<const cplx> a, std::span<const cplx> b) {
  cplx lanes[kCplxLanes] = {};
  const std::size_t n = a.size();
  const std::size_t main = n - n % kCplxLanes;
  for (std::size_t i = 0; i < main; i += kCplxLanes)
    for (std::size_t j = 0; j < kCplxLanes; ++j)
      lanes[j] += detail::conj_prod(a[i + j], b[i + j]);
  for (std::size_t j = 0; main + j < n; ++j)
    lanes[j] += detail::conj_prod(a[main + j], b[main + j]);
  return detail::fold_cplx(lanes);
}

cplx weighted_sum_scalar(std::span<const double> w, std::span<const cplx> f) {
  cplx lanes[kCplxLanes] = {};
  const std::size_t n = w.size();
  const std::size_t main = n - n % kCplxLanes;
  for (std::size_t i = 0; i < main; i += kCplxLanes)
    for (std::size_t j = 0; j < kCplxLanes; ++j)
      lanes[j] += detail::scale_cplx(w[i + j], f[i + j]);
  for (std::size_t j = 0; main + j < n; ++j)
    lanes[j] += detail::scale_cplx(w[main + j], f[main + j]);
  return detail::fold_cplx(lanes);
}

cplx weighted_cdotc_scalar(std::span<const double> w, std::span<const cplx> a,
                           std::span<const cplx> b) {
  cplx lanes[kCplxLanes] = {};
  const std::size_t n = w.size();
  const std::size_t main = n - n % kCplxLanes;
  for (std::size_t i = 0; i < main; i += kCplxLanes)
    for (std::size_t j = 0; j < kCplxLanes; ++j)
      lanes[j] += detail::scale_cplx(w[i + j], detail::conj_prod(a[i + j], b[i + j]));
  for (std::size_t j = 0; main + j < n; ++j)
    lanes[j] +=
        detail::scale_cplx(w[main + j], detail::conj_prod(a[main + j], b[main + j]));
  return detail::fold_cplx(lanes);
}

}  // namespace focklab::simd

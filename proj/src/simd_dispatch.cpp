#include <cstdlib>
#include <string>

#include "focklab/simd.hpp"

// Runtime backend selection: pick the widest supported backend once at
// startup, allow FOCKLAB_SIMD=scalar|avx2|neon to force a choice (silently
// falling back to scalar when the forced backend is unavailable on this
// machine or the value is unknown).

namespace focklab::simd {

namespace {

Backend detect() {
  const char* env = std::getenv("FOCKLAB_SIMD");
  if (env != nullptr) {
    const std::string v(env);
    if (v == "scalar") return Backend::scalar;
#ifdef FOCKLAB_X86
    if (v == "avx2" && cpu_supports_avx2()) return Backend::avx2;
#endif
#ifdef FOCKLAB_NEON
    if (v == "neon") return Backend::neon;
#endif
    return Backend::scalar;
  }
#ifdef FOCKLAB_X86
  if (cpu_supports_avx2()) return Backend::avx2;
#endif
#ifdef FOCKLAB_NEON
  return Backend::neon;
#endif
  return Backend::scalar;
}

}  // namespace

Backend active() {
  static const Backend chosen = detect();
  return chosen;
}

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::avx2:
      return "avx2";
    case Backend::neon:
      return "neon";
    default:
      return "scalar";
  }
}

double reduce_add(std::span<const double> x) {
#ifdef FOCKLAB_X86
  if (active() == Backend::avx2) return reduce_add_avx2(x);
#endif
#ifdef FOCKLAB_NEON
  if (active() == Backend::neon) return reduce_add_neon(x);
#endif
  return reduce_add_scalar(x);
}

double dot(std::span<const double> a, std::span<const double> b) {
#ifdef FOCKLAB_X86
  if (active() == Backend::avx2) return dot_avx2(a, b);
#endif
#ifdef FOCKLAB_NEON
  if (active() == Backend::neon) return dot_neon(a, b);
#endif
  return dot_scalar(a, b);
}

cplx cdotc(std::span<const cplx> a, std::span<const cplx> b) {
#ifdef FOCKLAB_X86
  if (active() == Backend::avx2) return cdotc_avx2(a, b);
#endif
#ifdef FOCKLAB_NEON
  if (active() == Backend::neon) return cdotc_neon(a, b);
#endif
  return cdotc_scalar(a, b);
}

cplx weighted_sum(std::span<const double> w, std::span<const cplx> f) {
#ifdef FOCKLAB_X86
  if (active() == Backend::avx2) return weighted_sum_avx2(w, f);
#endif
#ifdef FOCKLAB_NEON
  if (active() == Backend::neon) return weighted_sum_neon(w, f);
#endif
  return weighted_sum_scalar(w, f);
}

cplx weighted_cdotc(std::span<const double> w, std::span<const cplx> a,
                    std::span<const cplx> b) {
#ifdef FOCKLAB_X86
  if (active() == Backend::avx2) return weighted_cdotc_avx2(w, a, b);
#endif
#ifdef FOCKLAB_NEON
  if (active() == Backend::neon) return weighted_cdotc_neon(w, a, b);
#endif
  return weighted_cdotc_scalar(w, a, b);
}

}  // namespace focklab::simd

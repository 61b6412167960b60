#pragma once

#include <complex>
#include <cstddef>
#include <span>

// Reduction kernels used by the quadrature and matrix-assembly inner loops.
//
// Every kernel accumulates into a fixed number of striped lanes (8 real
// lanes, 4 complex lanes; element i goes to lane i mod L) and combines the
// lanes with a fixed folding tree.  The vector backends implement exactly
// the scalar lane schedule with non-fused arithmetic, so all backends
// produce bit-identical results; the unit tests assert that equivalence.
// Backend selection happens once at startup from CPU capabilities and can
// be overridden with the environment variable FOCKLAB_SIMD
// (scalar | avx2 | neon).

#if defined(__x86_64__) || defined(_M_X64)
#define FOCKLAB_X86 1
#endif
#if defined(__aarch64__)
#define FOCKLAB_NEON 1
#endif

namespace focklab::simd {

using cplx = std::complex<double>;

enum class Backend { scalar, avx2, neon };

const char* backend_name(Backend b);

// Backend chosen at startup (CPU detection + FOCKLAB_SIMD override).
Backend active();

// --- dispatched entry points -------------------------------------------

// sum_i x[i]
double reduce_add(std::span<const double> x);

// sum_i a[i] * b[i]
double dot(std::span<const double> a, std::span<const double> b);

// sum_i a[i] * conj(b[i])
cplx cdotc(std::span<const cplx> a, std::span<const cplx> b);

// sum_i w[i] * f[i]  (real weights, complex samples)
cplx weighted_sum(std::span<const double> w, std::span<const cplx> f);

// sum_i w[i] * a[i] * conj(b[i]) — the quadrature pairing workhorse
cplx weighted_cdotc(std::span<const double> w, std::span<const cplx> a,
                    std::span<const cplx> b);

// --- per-backend variants (exposed for the equivalence tests) ----------

double reduce_add_scalar(std::span<const double> x);
double dot_scalar(std::span<const double> a, std::span<const double> b);
cplx cdotc_scalar(std::span<const cplx> a, std::span<const cplx> b);
cplx weighted_sum_scalar(std::span<const double> w, std::span<const cplx> f);
cplx weighted_cdotc_scalar(std::span<const double> w, std::span<const cplx> a,
                           std::span<const cplx> b);

#ifdef FOCKLAB_X86
bool cpu_supports_avx2();
double reduce_add_avx2(std::span<const double> x);
double dot_avx2(std::span<const double> a, std::span<const double> b);
cplx cdotc_avx2(std::span<const cplx> a, std::span<const cplx> b);
cplx weighted_sum_avx2(std::span<const double> w, std::span<const cplx> f);
cplx weighted_cdotc_avx2(std::span<const double> w, std::span<const cplx> a,
                         std::span<const cplx> b);
#endif

#ifdef FOCKLAB_NEON
double reduce_add_neon(std::span<const double> x);
double dot_neon(std::span<const double> a, std::span<const double> b);
cplx cdotc_neon(std::span<const cplx> a, std::span<const cplx> b);
cplx weighted_sum_neon(std::span<const double> w, std::span<const cplx> f);
cplx weighted_cdotc_neon(std::span<const double> w, std::span<const cplx> a,
                         std::span<const cplx> b);
#endif

}  // namespace focklab::simd

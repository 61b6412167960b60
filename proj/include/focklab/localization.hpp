#pragma once

// Off-diagonal decay diagnostics: sampled profiles of |<A k_z, k_w>| against
// the separation |z - w|, power-envelope fits, weak-localization integrals,
// and compressions of band kernel operators with their Gaussian long-range
// envelope.

#include <functional>
#include <limits>
#include <vector>

#include "focklab/fock.hpp"
#include "focklab/grid.hpp"
#include "focklab/toeplitz.hpp"

namespace focklab {

struct LocalizationOptions {
  std::vector<double> base_radii{0.0, 0.5, 1.0};  // base points z = (r, 0, ...)
  int directions = 8;     // sample directions per pair (angles for n = 1,
                          // four phases per axis for n >= 2)
  double tail_tol = 5e-3; // norm-level kernel-coefficient gate at the
                          // farthest sample point
  double weak_extent = 8.0;  // radial reach of the weak integrals (n = 1)
  int weak_panels = 16;
  int weak_order = 20;
  int weak_angular = 64;
};

struct LocalizationProfile {
  std::vector<double> separations;  // sampled d values
  std::vector<double> peaks;        // max over sampled (z, w) at separation d
  double fit_c = 0.0;               // envelope fit peaks ~ C/(1+d)^beta
  double fit_beta = 0.0;
  bool fit_valid = false;
  double weak_sup = 0.0;   // max over bases of integral of |<A k_z, k_w>| dV(w)
  double weak_tail = 0.0;  // same integral restricted to |w - z| > tail_radius
  double tail_radius = 0.0;
  bool weak_computed = false;  // weak integrals run for n = 1 only
  double grid_extent = 0.0;
  double grid_step = 0.0;
  std::vector<double> base_radii;
  int directions = 0;
};

// Samples |<A k_z, k_w>| of the truncation over separations from `grid`,
// fits the power envelope on the log scale (positive samples only, floored
// at 1e-300), and computes the weak-localization integrals by polar
// quadrature around each base point.  The profile samples are gated on the
// kernel-coefficient tail at the farthest point; the weak integrals
// deliberately integrate the truncated kernel over the whole window (the
// integrand itself dies where the coefficients are truncated).
LocalizationProfile localization_profile(const TruncatedOperator& T,
                                         const RadialGrid& grid,
                                         double tail_radius,
                                         const LocalizationOptions& opt = {});

// Band kernel operator on the t = 1 space over C (n = 1):
//   A g(z) = integral of phi(z - v) psi(v) g(v) dmu_1(v),
// with phi supported in |u| <= omega; omega = 0 degenerates to plain
// multiplication by psi.
struct BandKernelOperator {
  double omega = 0.0;
  std::function<cplx(cplx)> phi;  // difference factor (ignored when omega = 0)
  std::function<cplx(cplx)> psi;  // bounded multiplier factor
  double phi_sup = 1.0;           // declared sup |phi|
  double psi_sup = 1.0;           // declared sup |psi|
  double psi_support = std::numeric_limits<double>::infinity();
  std::vector<double> psi_cuts;   // radii where |psi| jumps (panel hints)
};

struct BandPairingOptions {
  int outer_panels = 12;
  int outer_order = 12;
  int outer_angular = 48;
  int inner_panels = 3;
  int inner_order = 8;
  int inner_angular = 24;
  double window = 8.0;  // radial reach of the outer integral past the peak
};

// <A k_z, k_w>_1 for the band kernel operator by nested polar quadrature
// (the projection absorbs into the kernels since P k_z = k_z).
cplx band_pairing(const BandKernelOperator& B, const CPoint& z,
                  const CPoint& w, const BandPairingOptions& opt = {});

struct PbdopProfile {
  LocalizationProfile profile;
  double envelope_scale = 0.0;  // peak * e^{+d^2/(18n)} at the first sample
                                // past 3*omega
  bool envelope_ok = false;     // that ratio never grows (10% slack) beyond
                                // 3*omega: decay at least Gaussian of rate
                                // 1/(18n)
  double short_range_bound = 0.0;  // phi_sup * psi_sup * Gaussian ball mass
  bool short_range_ok = false;     // samples with d <= 3*omega under it
};

// Compression profile of the band operator with the long-range Gaussian
// envelope check and the short-range operator-norm proxy.
PbdopProfile pbdop_compression_profile(const BandKernelOperator& B,
                                       const RadialGrid& grid,
                                       const BandPairingOptions& opt = {},
                                       const LocalizationOptions& lopt = {});

}  // namespace focklab

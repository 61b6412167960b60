#pragma once

// Heat flow of symbols and the kernel pairings built from it.
//
// The heat flow at time s is convolution with the Gaussian of variance s per
// real pair: f^(s)(z) = integral of f(z - u) dmu_s(u).  The Berezin
// transform of T_f on the time-t space is exactly the flow at s = t.  The
// off-diagonal pairing <f k_w, k_z>_t extends the flow to two points and is
// the object all the operator-norm and localization bounds run through:
//
//  * an interpolation identity re-expresses the time-t pairing through the
//    time-(t-s) pairing of the time-s flow, at the cost of an explicit
//    growth-and-phase factor exp(s|w-z|^2/(2t(t-s)) - i s Im(z.conj(w))/(t(t-s)));
//  * for bounded g, |<g k_w, k_z>_t| <= sup|g| exp(-|w-z|^2/(4t)), and the
//    modulus integral that proves it meets the bound with equality whenever
//    |g| is constant.
//
// Evaluation strategy: closed forms for constant / Gaussian / polynomial-
// Gaussian symbols; a panel-split radial integrator for radial symbols with
// jumps (window of a few Gaussian widths, panel boundaries pinned to every
// jump); tensor Gauss-Hermite as the generic fallback.  The tensor path
// converges slowly on discontinuous symbols - prefer the radial path there.

#include <functional>
#include <optional>
#include <span>

#include "focklab/fock.hpp"
#include "focklab/grid.hpp"
#include "focklab/symbol.hpp"

namespace focklab {

struct HeatOptions {
  int radial_order = 40;   // Legendre points per radial panel
  int radial_panels = 12;  // panels spread across the integration window
  int tensor_order = 80;   // Gauss-Hermite order per real axis
  double window = 9.0;     // radial window half-width, in units of sqrt(s)
};

enum class HeatMethod { automatic, closed_form, radial, tensor };

// True when the Gaussian smoothing integral of f converges at time s
// (Gaussian-type symbols need s * Re(lambda) < 1; bounded symbols always do).
bool heat_admissible(const Symbol& f, double s);

// The flowed symbol as a symbol again, when the family is closed under the
// flow (constant, Gaussian, polynomial Gaussian); empty for jumps.
std::optional<Symbol> heat_flow_symbol(const Symbol& f, double s, int n);

// Heat flow of f at time s evaluated at z (dimension taken from z.n).
// Throws NumericRefusal when the flow diverges at time s.
cplx heat_transform(const Symbol& f, double s, const CPoint& z,
                    HeatMethod method = HeatMethod::automatic,
                    const HeatOptions& opt = {});

// Heat flow of an arbitrary radial profile, evaluated at radius rho.
// `breakpoints` lists radii where the profile jumps; `support_radius` may be
// +inf.  Reduction to one dimension uses the exponentially scaled Bessel
// factor ie_{n-1}, so the integrand never overflows.
cplx heat_radial(int n, double s, const std::function<cplx(double)>& profile,
                 double rho, std::span<const double> breakpoints,
                 double support_radius, const HeatOptions& opt = {});

// Berezin transform of the multiplication data of f on the time-t space:
// the heat flow at the space's own time.
cplx berezin_transform(const FockParams& p, const Symbol& f, const CPoint& z,
                       HeatMethod method = HeatMethod::automatic,
                       const HeatOptions& opt = {});

// |flow at s1+s2  -  flow at s2 of the flow at s1| evaluated at z: the
// semigroup property's numeric residual.  When the time-s1 flow has a closed
// form the iterated leg composes closed forms; `force_quadrature` instead
// pushes the iterated leg through the radial/tensor integrators so the
// property is exercised by actual integration.
double semigroup_residual(const Symbol& f, double s1, double s2,
                          const CPoint& z, const HeatOptions& opt = {},
                          bool force_quadrature = false);

struct PairingOptions {
  int tensor_order = 80;
  int radial_order = 40;
  int radial_panels = 12;
  int min_angular = 128;  // floor for the angular trapezoid point count
  double window = 9.0;    // radial window in Gaussian widths
};

// <f k_w, k_z>_t: the two-point extension of the heat flow at time t.
cplx kernel_pairing(const FockParams& p, const Symbol& f, const CPoint& w,
                    const CPoint& z, const PairingOptions& opt = {});

// Same pairing for a numeric radial profile h (n = 1, polar path).
cplx kernel_pairing_radial(const FockParams& p,
                           const std::function<cplx(double)>& h,
                           std::span<const double> breakpoints,
                           double support_radius, const CPoint& w,
                           const CPoint& z, const PairingOptions& opt = {});

struct OffdiagIdentity {
  cplx lhs;         // <f k_w, k_z>_t
  cplx rhs;         // growth-and-phase factor times the time-(t-s) pairing
                    // of the time-s flow
  double residual;  // |lhs - rhs|
};

// Interpolation identity for 0 <= s < t linking the time-t pairing of f to
// the time-(t-s) pairing of its time-s flow.
OffdiagIdentity check_offdiag_identity(const FockParams& p, const Symbol& f,
                                       double s, const CPoint& w,
                                       const CPoint& z,
                                       const PairingOptions& opt = {});

struct OffdiagBound {
  double value;     // |<g k_w, k_z>_t|
  double majorant;  // modulus integral: |g| |k_w| |k_z| against mu_t
  double bound;     // sup|g| * exp(-|w-z|^2/(4t))
  bool ok;          // value <= majorant <= bound up to roundoff slack
};

// Gaussian off-diagonal decay of bounded-symbol pairings.  The majorant is
// the quantity the proof controls pointwise; it equals the bound whenever
// |g| is constant, so the estimate is sharp in that regime.
OffdiagBound check_offdiag_bound(const FockParams& p, const Symbol& g,
                                 const CPoint& w, const CPoint& z,
                                 const PairingOptions& opt = {});

struct MeanOscOptions {
  double extent_mult = 8.0;  // window half-width in units of sqrt(t)
  int panels = 16;           // panels per axis; keep even so axis kinks are
                             // resolved by panel boundaries
  int order = 24;            // Legendre points per panel
};

// integral of |f(z - w) - (flow of f at t)(z)| dmu_t(w): the Gaussian mean
// oscillation of f at z (n = 1).  The centering average is computed with the
// same rule, so discretization errors cancel to first order.
double mean_oscillation(const FockParams& p, const std::function<cplx(cplx)>& f,
                        cplx z, const MeanOscOptions& opt = {});

// sup of the mean oscillation over a plane lattice: the grid estimate of the
// Gaussian bounded-mean-oscillation seminorm.
double bmo_seminorm(const FockParams& p, const std::function<cplx(cplx)>& f,
                    const PlaneGrid& grid, const MeanOscOptions& opt = {});

}  // namespace focklab

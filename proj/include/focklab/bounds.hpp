#pragma once

// Explicit constants and inequalities tying compression norms to heat-flow
// sups: the interpolation constant gamma and its norm bound, the
// nonnegative-symbol sandwich, Schur-type integral bounds, the c_k scale
// with its Gaussian envelope exponent, and kernel tail masses.

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "focklab/fock.hpp"
#include "focklab/heat.hpp"
#include "focklab/symbol.hpp"

namespace focklab {

struct BoundConstants {
  double s = 0.0;
  double t = 0.0;
  int n = 1;
  double gamma = 0.0;    // 1/(4(t-s)) - s/(2t(t-s))
  double c = 0.0;        // (1/(gamma t))^n, defined only when gamma > 0
  bool c_defined = false;
};

// gamma_{s,t} and the norm constant C = (1/(gamma t))^n.  gamma is positive
// exactly when s < t/2 (within the interpolation range s < t); at or past
// t/2 the returned gamma is <= 0 and C is marked undefined (NaN).
BoundConstants gamma_and_constant(double s, double t, int n);

struct SupEstimate {
  double value = 0.0;             // finest-level grid sup
  std::array<double, 3> levels{}; // sup at step, step/2, step/4
  bool stabilized = false;        // both successive refinements within 0.1%
};

// Grid sup of |heat flow of f at time s| over radii [0, extent] (radial
// symbols reduce exactly; an off-center ball scans the centered profile out
// to extent + |center|).  The sup is reported with a refinement audit: the
// step is halved twice and the estimate counts as stabilized only when both
// refinements move it by less than 0.1%.
SupEstimate heat_sup_estimate(const Symbol& f, double s, int n, double extent,
                              double step, const HeatOptions& opt = {});

struct BcBoundCheck {
  double lhs_norm = 0.0;   // compression norm at the requested degree
  double rhs_bound = 0.0;  // C * stabilized grid sup of the time-s flow
  double margin = 0.0;     // rhs - lhs
  bool ok = false;
  BoundConstants constants;
  SupEstimate sup;
  int degree = 0;
};

// Checks compression-norm <= C * sup of the time-s flow for s < t/2.  The
// left side is a lower bound for the operator norm, so the check is
// conservative.  s >= t/2 is rejected; an unstabilized grid sup refuses
// with a refinement hint.
BcBoundCheck bc_bound_check(const Symbol& f, double s, double t, int n,
                            int degree, double extent, double step);

struct SandwichCheck {
  double low = 0.0;          // grid sup of the time-t flow
  double mid = 0.0;          // compression norm at the requested degree
  double high = 0.0;         // 4^n * low
  double two_time_min = 0.0; // min over the grid of flow_t - 2^{-n} flow_{t/2}
  bool ok = false;
};

// For nonnegative symbols: low <= mid <= high within `tol` slack, plus the
// two-time comparison (its reported minimum should be >= -tol).  Signed
// symbols are rejected.
SandwichCheck nonneg_sandwich_check(const Symbol& f, double t, int n,
                                    int degree, double extent, double step,
                                    double tol = 1e-8);

struct FlowNormRatio {
  double s = 0.0;
  double flow_sup = 0.0;          // stabilized grid sup of the time-s flow
  double compression_norm = 0.0;  // at the requested degree
  double ratio = 0.0;             // flow_sup / compression_norm
};

// Data-only diagnostic for times past the t/2 boundary: how the flow sup
// compares to the compression norm for s in (t/2, 2t).  No bound is
// asserted; no explicit constant is available in this regime.
std::vector<FlowNormRatio> flow_vs_norm_ratio(const Symbol& f, double t, int n,
                                              int degree,
                                              std::span<const double> s_values,
                                              double extent, double step);

struct SchurDominant {
  enum class Kind { gaussian, power } kind = Kind::gaussian;
  double param = 1.0;  // decay rate a for e^{-a d^2}; exponent beta for (1+d)^{-beta}

  static SchurDominant gaussian(double a);
  static SchurDominant power(double beta);
};

// pi^{-n} * integral over C^n of H(|u|) dV(u): the Schur-test norm bound for
// an operator whose Berezin-type kernel is dominated by H(|z-w|).
// Closed forms: a^{-n} for the Gaussian; 2 Gamma(2n) Gamma(beta-2n) /
// (Gamma(n) Gamma(beta)) for the power.  beta <= 2n is rejected as not
// integrable.  force_quadrature rebuilds the value by radial panels.
double schur_bound(const SchurDominant& H, int n,
                   bool force_quadrature = false);

// c_0 = 0, c_{k+1} = 1/(4(1-c_k)); closed form k/(2(k+1)).  The recursion is
// iterated in the gap variable d_k = 1/2 - c_k (d_{k+1} = d_k/(1+2d_k),
// algebraically identical), which keeps the relative error near machine
// precision over millions of steps.
double c_scale(std::int64_t k);            // closed form
double c_scale_recursive(std::int64_t k);  // recursion in the gap variable
// max |recursive - closed| over 0..kmax
double c_scale_max_deviation(std::int64_t kmax);
// Gaussian envelope exponent 1/2 - c_{k+1} of the k-step localization chain
double envelope_exponent(std::int64_t k);

struct KernelTail {
  double exact = 0.0;  // sqrt Q(n, r^2): mass of k_z outside the ball B(z, r)
  double bound = 0.0;  // (2^n - 1) e^{-r^2/(2n)}
  bool ok = false;     // exact <= bound (equality at n = 1)
};

// Norm of the normalized kernel vector restricted outside B(z, r).  The
// closed form sqrt(Q(n, r^2)) is independent of z (translation invariance;
// z is accepted for interface symmetry and dimension checking only).
KernelTail kernel_tail(const CPoint& z, double r, int n);

}  // namespace focklab

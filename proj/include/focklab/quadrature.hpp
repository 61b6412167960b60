#pragma once

// Gaussian quadrature rules and the integration drivers built on them.
//
// All rules are generated by the Golub–Welsch procedure: nodes start as the
// eigenvalues of the symmetric tridiagonal Jacobi matrix of the orthogonal
// polynomial family and are polished by Newton's method; weights come from
// the Christoffel identity 1/w_i = sum_k p_k(x_i)^2 over the orthonormal
// polynomials, evaluated with power-of-two rescaling.  That keeps the far
// weights relatively accurate down to (and honestly past) the double range,
// which integrands with polynomial growth depend on.  Rules are cached per
// (family, order), so repeated requests are cheap.
//
// Normalization conventions (they differ between families on purpose):
//   gauss_hermite(q):   sum_i w_i f(x_i)  ~  integral of f(x) e^{-x^2}/sqrt(pi)
//                       over the real line; weights sum to 1.
//   gauss_laguerre(q):  sum_i w_i f(x_i)  ~  integral of f(x) e^{-x} over
//                       (0, inf); weights sum to 1.
//   gauss_legendre(q):  sum_i w_i f(x_i)  ~  integral of f over (-1, 1);
//                       weights sum to 2.
//
// The plane drivers integrate against the Gaussian probability measure
// mu_s(z) = (pi s)^{-n} exp(-|z|^2/s) dV(z), which is the measure every
// transform in this library is phrased in.  Accuracy degrades for integrands
// with discontinuities; those should go through the panel-split radial path
// instead (see heat.hpp).

#include <cstddef>
#include <functional>
#include <vector>

#include "focklab/fock.hpp"

namespace focklab::quad {

struct Rule1D {
  std::vector<double> x;
  std::vector<double> w;
  int order() const { return static_cast<int>(x.size()); }
};

// Largest supported 1-D order and total tensor-node budget.  Requests beyond
// these limits are precondition errors / numeric refusals rather than silent
// long-running jobs.
inline constexpr int kMaxRuleOrder = 2000;
inline constexpr std::size_t kMaxTensorNodes = 2'000'000;

const Rule1D& gauss_hermite(int order);
const Rule1D& gauss_laguerre(int order);
const Rule1D& gauss_legendre(int order);

// Legendre rule mapped to [a, b] (weights scaled by the interval half-width).
Rule1D legendre_on(double a, double b, int order);

// Composite Legendre rule: [a, b] split into `panels` equal pieces, `order`
// points per piece.  Used whenever an integrand has a known kink that must
// sit on a panel boundary.
Rule1D composite_legendre(double a, double b, int panels, int order);

// Legendre rule over [a, b] split at the given interior cuts; the panel
// budget is distributed across segments proportionally to their length, so
// every jump or peak listed in `cuts` lands on a panel edge.
Rule1D windowed_rule(double a, double b, std::vector<double> cuts, int panels,
                     int order);

// Tensor-product nodes for integration against mu_s on C^n: K = order^{2n}
// points with coords stored node-major (node k occupies coords[k*n .. k*n+n)).
// The weights already include the full Gaussian density, so
// sum_k w_k G(z_k) approximates the mu_s integral of G.
struct PlaneNodes {
  int n = 1;
  double s = 1.0;
  std::vector<cplx> coords;
  std::vector<double> w;
  std::size_t count() const { return w.size(); }
};

PlaneNodes gaussian_nodes(int n, double s, int order);

// integral of G over C^n against mu_s, via gaussian_nodes(n, s, order).
cplx integrate_gaussian(int n, double s, int order,
                        const std::function<cplx(const CPoint&)>& G);

// integral of g(|z|) against mu_s for a radial integrand, reduced to a 1-D
// Gauss–Laguerre sum in x = |z|^2/s:
//   (1/Gamma(n)) * integral of g(sqrt(s x)) x^{n-1} e^{-x} dx.
cplx integrate_radial(int n, double s, int order,
                      const std::function<cplx(double)>& g);

// integral of G against mu_s on C (n = 1) by a composite Legendre rule over
// the square [-L, L]^2 with `panels` panels per axis.  Panel boundaries land
// on the coordinate axes when `panels` is even, which is what integrands with
// an |Re z| or |Im z| kink need.  Mass outside the square is not estimated;
// pick L so exp(-L^2/s) is negligible.
cplx integrate_plane_composite(double s, double L, int panels, int order,
                               const std::function<cplx(cplx)>& G);

// integral of G against mu_s on C (n = 1) over the disc |z| <= rmax in polar
// form: composite Legendre in the radius (rpanels panels, `order` points
// each) crossed with an m_ang-point trapezoid in the angle.  The trapezoid
// converges spectrally for smooth periodic slices.
cplx integrate_plane_polar(double s, double rmax, int rpanels, int order,
                           int m_ang, const std::function<cplx(cplx)>& G);

}  // namespace focklab::quad

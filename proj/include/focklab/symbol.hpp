#pragma once

// Symbol catalogue: the functions whose Toeplitz operators, heat flows, and
// bounds the rest of the library studies.  Five families are supported:
//
//   constant       f(z) = v
//   gaussian       f(z) = e^{lambda |z|^2}, lambda complex
//   radial_step    f(z) = v_k on the annulus r_{k-1} <= |z| < r_k (r_0 = 0),
//                  0 beyond the last radius; the last radius may be inf
//   ball           indicator of |z - c| <= R (R may be inf)
//   poly_gaussian  f(z) = (c_0 + c_1 |z|^2 + ... ) e^{lambda |z|^2}
//
// Every symbol can be rendered to a one-line textual form via describe() and
// parsed back with parse_symbol(); the CLI uses exactly that grammar, e.g.
//   gaussian:lambda=0.25
//   step:r=1,2.5;v=1,0.5-0.25i
//   ball:center=0,0;radius=2
//   polygauss:coeffs=1,0.5;lambda=-0.5
// Keys and family names are case-insensitive; complex literals use the forms
// "a", "bi", "a+bi", "a-bi" (an optional bare "i" means 1i).

#include <string>
#include <vector>

#include "focklab/fock.hpp"

namespace focklab {

enum class SymbolKind { constant, gaussian, radial_step, ball, poly_gaussian };

inline constexpr int kMaxPolyCoeffs = 8;

struct Symbol {
  SymbolKind kind = SymbolKind::constant;
  cplx value = 1.0;            // constant
  cplx lambda = 0.0;           // gaussian / poly_gaussian exponent
  std::vector<double> radii;   // radial_step breakpoints, strictly increasing
  std::vector<cplx> values;    // radial_step values, one per annulus
  std::vector<cplx> center;    // ball center; its length fixes the dimension
  double radius = 0.0;         // ball radius
  std::vector<cplx> coeffs;    // poly_gaussian coefficients in |z|^2

  static Symbol constant(cplx v);
  static Symbol gaussian(cplx lambda);
  static Symbol radial_step(std::vector<double> radii, std::vector<cplx> values);
  static Symbol ball(std::vector<cplx> center, double radius);
  static Symbol poly_gaussian(std::vector<cplx> coeffs, cplx lambda);

  void validate() const;

  cplx eval(const CPoint& z) const;

  // True when f depends on z only through |z| (ball qualifies when its
  // center is the origin).
  bool radial() const;
  // Value at radius r; only meaningful when radial().
  cplx radial_value(double r) const;
  // Finite radii where the radial profile jumps (empty for smooth symbols).
  std::vector<double> radial_breakpoints() const;

  bool compactly_supported() const;
  double support_radius() const;  // +inf when the support is unbounded

  // sup over C^n of |f|; +inf when the symbol is unbounded.
  double sup_abs() const;

  std::string kind_name() const;
  std::string describe() const;
};

// Parses the describe() grammar; throws PreconditionError on malformed text.
Symbol parse_symbol(const std::string& text);

// Complex literal helpers shared with the CLI: "a", "bi", "a+bi", "a-bi".
cplx parse_complex(const std::string& text);
std::string format_complex(cplx v);
std::string format_double(double v);

}  // namespace focklab

#pragma once

#include <cstdint>

// Scalar special functions used throughout: regularized incomplete gamma
// (Gaussian mass of balls, basis-coefficient tails), exponentially scaled
// modified Bessel functions (radial heat integrals), and factorial
// helpers for basis normalization.

namespace focklab::special {

// Regularized lower incomplete gamma P(a, x) = gamma(a, x) / Gamma(a).
// Series for x < a + 1, Lentz continued fraction otherwise; relative
// accuracy target 1e-12 over the a <= 200 range used here.
double lower_reg_gamma(double a, double x);

// Regularized upper incomplete gamma Q(a, x) = 1 - P(a, x).
double upper_reg_gamma(double a, double x);

// e^(-x) I_nu(x) for integer nu in {0, 1, 2}, x >= 0.  Power series below
// x = 40, asymptotic expansion above; both regimes reach ~1e-15 relative.
double scaled_bessel_i(int nu, double x);

// log(k!)
double log_factorial(std::int64_t k);

// k! as a double (exact up to 170, +inf beyond)
double factorial(std::int64_t k);

// binomial coefficient as a double (exact for the small arguments used here)
double binomial(std::int64_t n, std::int64_t k);

}  // namespace focklab::special

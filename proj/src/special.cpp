#include "focklab/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace focklab::special {

namespace {

constexpr int kMaxIter = 600;
constexpr double kEps = 1e-16;
constexpr double kTiny = 1e-300;

// gamma(a,x)/Gamma(a) via the standard power series, valid/fast for x < a+1
double gamma_series(double a, double x) {
  double ap = a;
  double term = 1.0 / a;
  double sum = term;
  for (int i = 0; i < kMaxIter; ++i) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * kEps)
      return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
  }
  throw std::runtime_error("incomplete gamma series did not converge");
}

// Gamma(a,x)/Gamma(a) via modified Lentz continued fraction, for x >= a+1
double gamma_cf(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps)
      return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
  }
  throw std::runtime_error("incomplete gamma continued fraction did not converge");
}

}  // namespace

double lower_reg_gamma(double a, double x) {
  if (!(a > 0.0) || x < 0.0)
    throw std::invalid_argument("lower_reg_gamma requires a > 0, x >= 0");
  if (x == 0.0) return 0.0;
  return (x < a + 1.0) ? gamma_series(a, x) : 1.0 - gamma_cf(a, x);
}

double upper_reg_gamma(double a, double x) {
  if (!(a > 0.0) || x < 0.0)
    throw std::invalid_argument("upper_reg_gamma requires a > 0, x >= 0");
  if (x == 0.0) return 1.0;
  return (x < a + 1.0) ? 1.0 - gamma_series(a, x) : gamma_cf(a, x);
}

namespace {

// e^(-x) sum_k (x/2)^(2k+nu) / (k! (k+nu)!) — all terms positive, no
// cancellation; usable while (x/2)^(2k+nu)/... stays in double range,
// which holds comfortably for x <= 40.
double scaled_bessel_series(int nu, double x) {
  double term = 1.0;
  for (int j = 1; j <= nu; ++j) term *= (x / 2.0) / j;
  double sum = term;
  const double q = x * x / 4.0;
  for (int k = 1; k < kMaxIter; ++k) {
    term *= q / (static_cast<double>(k) * (k + nu));
    sum += term;
    if (term < sum * kEps) break;
  }
  return std::exp(-x) * sum;
}

// I_nu(x) ~ e^x/sqrt(2 pi x) * sum_k (-1)^k a_k(nu)/x^k with
// a_k(nu) = prod_{j<=k} (4 nu^2 - (2j-1)^2) / (k! 8^k); truncated at the
// smallest term.  Below ~1e-16 relative for x >= 40.
double scaled_bessel_asymptotic(int nu, double x) {
  const double mu = 4.0 * nu * nu;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k <= 30; ++k) {
    const double odd = 2.0 * k - 1.0;
    const double next = term * (mu - odd * odd) / (8.0 * k * x);
    if (std::abs(next) >= std::abs(term)) break;  // past optimal truncation
    term = -next;  // sign folded in: a_k alternates via (mu - odd^2) < 0
    sum += term;
    if (std::abs(term) < kEps * std::abs(sum)) break;
  }
  return sum / std::sqrt(2.0 * M_PI * x);
}

}  // namespace

double scaled_bessel_i(int nu, double x) {
  if (nu < 0 || nu > 2) throw std::invalid_argument("scaled_bessel_i supports nu in 0..2");
  if (x < 0.0) throw std::invalid_argument("scaled_bessel_i requires x >= 0");
  return (x <= 40.0) ? scaled_bessel_series(nu, x) : scaled_bessel_asymptotic(nu, x);
}

double log_factorial(std::int64_t k) {
  if (k < 0) throw std::invalid_argument("log_factorial requires k >= 0");
  return std::lgamma(static_cast<double>(k) + 1.0);
}

double factorial(std::int64_t k) {
  if (k < 0) throw std::invalid_argument("factorial requires k >= 0");
  if (k > 170) return std::numeric_limits<double>::infinity();
  double f = 1.0;
  for (std::int64_t j = 2; j <= k; ++j) f *= static_cast<double>(j);
  return f;
}

double binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (std::int64_t j = 1; j <= k; ++j)
    r = r * static_cast<double>(n - k + j) / static_cast<double>(j);
  return std::round(r);
}

}  // namespace focklab::special

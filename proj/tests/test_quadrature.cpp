#include <cmath>
#include <complex>

#include "doctest.h"
#include "focklab/errors.hpp"
#include "focklab/quadrature.hpp"

using namespace focklab;
using focklab::quad::Rule1D;

namespace {
double apply(const Rule1D& r, double (*f)(double)) {
  double s = 0.0;
  for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * f(r.x[i]);
  return s;
}
}  // namespace

TEST_CASE("Gauss-Legendre integrates polynomials of degree 2k-1 exactly") {
  const Rule1D r = quad::legendre_on(0.0, 1.0, 3);
  CHECK(apply(r, [](double x) { return x * x * x * x * x; }) ==
        doctest::Approx(1.0 / 6.0).epsilon(1e-15));
  const Rule1D big = quad::legendre_on(-2.0, 3.0, 12);
  CHECK(apply(big, [](double x) { return x * x; }) ==
        doctest::Approx((27.0 + 8.0) / 3.0).epsilon(1e-14));
}

TEST_CASE("Gauss-Laguerre moments") {
  // order k is exact through degree 2k-1: x^3 with 2 points.
  const Rule1D& r2 = quad::gauss_laguerre(2);
  CHECK(apply(r2, [](double x) { return x * x * x; }) ==
        doctest::Approx(6.0).epsilon(1e-13));
  const Rule1D& r20 = quad::gauss_laguerre(20);
  CHECK(apply(r20, [](double x) { return x * x * x * x; }) ==
        doctest::Approx(24.0).epsilon(1e-13));
}

TEST_CASE("Gauss-Hermite moments under the normalized weight") {
  // The rule carries the probability weight e^{-x^2}/sqrt(pi), i.e. a
  // centered Gaussian with variance 1/2: total mass 1, fourth moment
  // 3 sigma^4 = 3/4, odd moments zero.
  const Rule1D& r = quad::gauss_hermite(6);
  CHECK(apply(r, [](double) { return 1.0; }) ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(apply(r, [](double x) { return x * x * x * x; }) ==
        doctest::Approx(0.75).epsilon(1e-14));
  CHECK(apply(r, [](double x) { return x * x * x; }) ==
        doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
}

TEST_CASE("windowed rule puts cuts on panel edges: |x-1| integrates exactly") {
  const Rule1D r = quad::windowed_rule(0.0, 2.0, {1.0}, 4, 6);
  CHECK(apply(r, [](double x) { return std::abs(x - 1.0); }) ==
        doctest::Approx(1.0).epsilon(1e-14));
  // Without the cut the kink ruins the rate; with it the rule is exact.
  const Rule1D plain = quad::legendre_on(0.0, 2.0, 6);
  CHECK(std::abs(apply(plain, [](double x) { return std::abs(x - 1.0); }) -
                 1.0) > 1e-6);
}

TEST_CASE("windowed rule rejects malformed windows") {
  CHECK_THROWS_AS((void)quad::windowed_rule(1.0, 0.0, {}, 4, 6),
                  PreconditionError);
  CHECK_THROWS_AS((void)quad::composite_legendre(0.0, 1.0, 0, 6),
                  PreconditionError);
}

TEST_CASE("Gaussian plane measure is a probability measure with moment n*s") {
  for (int n : {1, 2}) {
    for (double s : {0.5, 1.0}) {
      const cplx one = quad::integrate_gaussian(
          n, s, 20, [](const CPoint&) { return cplx{1.0, 0.0}; });
      CHECK(one.real() == doctest::Approx(1.0).epsilon(1e-13));
      CHECK(one.imag() == doctest::Approx(0.0).scale(1.0).epsilon(1e-14));
      const cplx m2 = quad::integrate_gaussian(
          n, s, 20, [](const CPoint& z) { return cplx{norm2(z), 0.0}; });
      CHECK(m2.real() == doctest::Approx(n * s).epsilon(1e-12));
    }
  }
}

TEST_CASE("radial reduction hits closed moment-generating values") {
  // Under the Gaussian plane measure at scale s, |z|^2 is a sum of n
  // independent exponentials of mean s, so E e^{lambda |z|^2} =
  // (1 - lambda s)^{-n}.  Test with lambda = i (cosine part) and
  // lambda = -1 (real decay) in one sweep.
  const double s = 0.8;
  for (int n : {1, 2, 3}) {
    const cplx radial = quad::integrate_radial(n, s, 40, [](double r) {
      return cplx{std::cos(r * r), std::exp(-r * r)};
    });
    const double cos_part = std::pow(cplx{1.0, -s}, -double(n)).real();
    const double exp_part = std::pow(1.0 + s, -double(n));
    CHECK(std::abs(radial - cplx{cos_part, exp_part}) < 1e-10);
  }
  // The tensor rule sees the same values where the node budget allows.
  for (int n : {1, 2}) {
    const cplx tensor =
        quad::integrate_gaussian(n, s, n == 1 ? 40 : 30, [](const CPoint& z) {
          const double r2 = norm2(z);
          return cplx{std::cos(r2), std::exp(-r2)};
        });
    const double cos_part = std::pow(cplx{1.0, -s}, -double(n)).real();
    const double exp_part = std::pow(1.0 + s, -double(n));
    CHECK(std::abs(tensor - cplx{cos_part, exp_part}) < 1e-9);
  }
}

TEST_CASE("polar and composite plane rules agree with the node rule") {
  auto g = [](cplx z) {
    return std::exp(-std::norm(z - cplx{0.4, 0.2})) * cplx{1.0, 0.5};
  };
  const cplx tensor = quad::integrate_gaussian(
      1, 1.0, 40, [&](const CPoint& z) { return g(z.v[0]); });
  const cplx polar = quad::integrate_plane_polar(1.0, 7.0, 8, 16, 64, g);
  const cplx composite = quad::integrate_plane_composite(1.0, 7.0, 8, 14, g);
  CHECK(std::abs(tensor - polar) < 1e-10);
  CHECK(std::abs(tensor - composite) < 1e-10);
}

TEST_CASE("tensor node budget is enforced") {
  CHECK_THROWS_AS((void)quad::gaussian_nodes(3, 1.0, 200), NumericRefusal);
}

TEST_CASE("polynomial exactness survives high orders and tiny far weights") {
  // At order 160 the outer Hermite nodes carry weights near 1e-129; their
  // error must scale with the weight itself, or high-degree integrands
  // (basis pairings, matrix audits) silently collapse.  Both checks sit
  // inside the rules' exactness degree, so machine precision is the bar.
  const auto& h = quad::gauss_hermite(160);
  double m120 = 0.0;
  for (std::size_t i = 0; i < h.x.size(); ++i)
    m120 += h.w[i] * std::pow(h.x[i], 120);
  double exact = 1.0;
  for (int k = 1; k <= 60; ++k) exact *= (2.0 * k - 1.0) / 2.0;
  CHECK(m120 == doctest::Approx(exact).epsilon(1e-12));
  CHECK(h.w.front() < 1e-100);  // honest far weight, not eigensolver noise

  const auto& l = quad::gauss_laguerre(80);
  double m60 = 0.0;
  for (std::size_t i = 0; i < l.x.size(); ++i)
    m60 += l.w[i] * std::pow(l.x[i], 60);
  CHECK(m60 == doctest::Approx(std::tgamma(61.0)).epsilon(1e-12));
}

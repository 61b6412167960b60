#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "focklab/errors.hpp"
#include "focklab/fock.hpp"
#include "focklab/norms.hpp"
#include "focklab/quadrature.hpp"
#include "focklab/special.hpp"

using namespace focklab;

TEST_CASE("kernel evaluation and its normalized variant") {
  const FockParams p{1, 1.0};
  const CPoint w{cplx{1.0, 1.0}};
  const CPoint z{cplx{0.5, -0.25}};
  // K(w, z) = exp(w conj(z) / t)
  const cplx expect = std::exp(cplx{1.0, 1.0} * std::conj(cplx{0.5, -0.25}));
  CHECK(std::abs(kernel_eval(p, w, z) - expect) < 1e-14);
  // k_z(z) = exp(|z|^2 / (2t)) and |<k_w, k_z>| = exp(-|w-z|^2/(2t)) come
  // from the same normalization; spot check the diagonal value.
  const cplx diag = kernel_eval(p, z, z, true);
  CHECK(std::abs(diag - std::exp(cplx{norm2(z) / 2.0, 0.0})) < 1e-13);
}

TEST_CASE("normalized kernel vectors carry unit mass: coefficients + tail") {
  for (double t : {0.5, 1.0, 2.0}) {
    const FockParams p{1, t};
    for (double r : {0.0, 0.7, 2.3}) {
      const CPoint z{cplx{r, 0.4 * r}};
      const auto kc = kernel_coefficients(p, z, 25);
      double mass = 0.0;
      for (cplx c : kc.c) mass += std::norm(c);
      CHECK(mass + kc.tail == doctest::Approx(1.0).epsilon(1e-13));
    }
  }
  const FockParams p2{2, 1.0};
  const auto kc2 = kernel_coefficients(p2, CPoint{cplx{1.0, 0.0}, cplx{0.0, 1.0}}, 18);
  double mass2 = 0.0;
  for (cplx c : kc2.c) mass2 += std::norm(c);
  CHECK(mass2 + kc2.tail == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("kernel coefficients match the direct formula") {
  // <k_z, e_m> = e^{-|z|^2/(2t)} conj(z)^m / sqrt(t^|m| m!)
  const FockParams p{1, 1.0};
  const CPoint z{cplx{1.0, 1.0}};
  const auto kc = kernel_coefficients(p, z, 6);
  const auto basis = enumerate_multiindices(1, 6);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const int m = basis[i].m[0];
    const cplx direct = std::exp(-norm2(z) / 2.0) *
                        std::pow(std::conj(z.v[0]), m) /
                        std::sqrt(special::factorial(m));
    CHECK(std::abs(kc.c[i] - direct) < 1e-14);
  }
}

TEST_CASE("tail mass is the regularized gamma tail of |z|^2/t") {
  const FockParams p{1, 2.0};
  const CPoint z{cplx{1.5, -0.5}};
  const double x = norm2(z) / p.t;
  for (int d : {0, 3, 10}) {
    CHECK(kernel_tail_mass(p, z, d) ==
          doctest::Approx(special::lower_reg_gamma(d + 1.0, x)).epsilon(1e-13));
  }
  // Dimension 2: the mass at total degree d is still e^{-x} x^d / d!
  // (multinomial identity), so the tail threshold does not move with n.
  const FockParams p2{2, 1.0};
  const CPoint z2{cplx{1.0, 0.0}, cplx{1.0, 0.0}};
  CHECK(kernel_tail_mass(p2, z2, 5) ==
        doctest::Approx(special::lower_reg_gamma(6.0, 2.0)).epsilon(1e-13));
}

TEST_CASE("min_degree_for_tail brackets the tolerance") {
  const FockParams p{1, 1.0};
  const CPoint z{cplx{2.0, 1.0}};
  const double tol = 1e-6;
  const int d = min_degree_for_tail(p, z, tol);
  CHECK(kernel_tail_mass(p, z, d) <= tol);
  REQUIRE(d > 0);
  CHECK(kernel_tail_mass(p, z, d - 1) > tol);
}

TEST_CASE("basis values from the node table match direct evaluation") {
  const FockParams p{2, 0.7};
  const auto basis = enumerate_multiindices(2, 4);
  const std::vector<cplx> coords = {cplx{0.3, 0.1},  cplx{-0.2, 0.5},
                                    cplx{1.1, -0.4}, cplx{0.0, 0.9}};
  const std::size_t nodes = coords.size() / 2;
  const auto table = onb_node_table(p, basis, coords);
  REQUIRE(table.size() == basis.size() * nodes);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t k = 0; k < nodes; ++k) {
      const CPoint zk{coords[2 * k], coords[2 * k + 1]};
      CHECK(std::abs(table[i * nodes + k] - onb_eval(p, basis[i], zk)) <
            1e-13);
    }
  }
}

TEST_CASE("reproducing property under the Gaussian measure") {
  // <e_m, K_z> = e_m(z): quadrature against mu_t reproduces point values.
  const FockParams p{1, 1.0};
  const CPoint z{cplx{0.6, 0.3}};
  const auto basis = enumerate_multiindices(1, 5);
  for (const auto& m : basis) {
    const cplx got = quad::integrate_gaussian(1, 1.0, 30, [&](const CPoint& w) {
      return onb_eval(p, m, w) * std::conj(kernel_eval(p, w, z));
    });
    CHECK(std::abs(got - onb_eval(p, m, z)) < 1e-12);
  }
}

TEST_CASE("weighted p-norms of normalized kernels are 1 for every p") {
  const FockParams p{1, 1.0};
  const CPoint z{cplx{0.8, -0.6}};
  auto kz = [&](const CPoint& w) { return kernel_eval(p, w, z, true); };
  for (double pexp : {1.0, 2.0, 4.0}) {
    CHECK(fock_norm(p, pexp, 40, kz) == doctest::Approx(1.0).epsilon(1e-10));
  }
  // Grid sup of |k_z(w)| e^{-|w|^2/2} peaks at w = z with value 1.
  PlaneGrid grid;
  grid.extent = 2.0;
  grid.step = 0.2;
  const double sup = fock_sup_norm(p, grid, [&](cplx w) {
    return kernel_eval(p, CPoint{w}, z, true);
  });
  CHECK(sup == doctest::Approx(1.0).epsilon(1e-2));
  CHECK(sup <= 1.0 + 1e-12);
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS((FockParams{0, 1.0}.validate()), PreconditionError);
  CHECK_THROWS_AS((FockParams{1, 0.0}.validate()), PreconditionError);
  CHECK_THROWS_AS((FockParams{1, -2.0}.validate()), PreconditionError);
}

#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "focklab/errors.hpp"
#include "focklab/fock.hpp"
#include "focklab/heat.hpp"
#include "focklab/symbol.hpp"

using namespace focklab;

TEST_CASE("closed, radial, and tensor integrators agree on smooth symbols") {
  const Symbol g = Symbol::gaussian(cplx{-0.5, 0.25});
  const Symbol pg = Symbol::poly_gaussian({cplx{1.0, 0.0}, cplx{0.5, -0.25}},
                                          cplx{-0.75, 0.0});
  for (const Symbol& f : {g, pg}) {
    for (double s : {0.3, 1.0}) {
      for (double r : {0.0, 0.8, 1.7}) {
        const CPoint z{cplx{r, 0.3 * r}};
        const cplx closed = heat_transform(f, s, z, HeatMethod::closed_form);
        const cplx radial = heat_transform(f, s, z, HeatMethod::radial);
        const cplx tensor = heat_transform(f, s, z, HeatMethod::tensor);
        CHECK(std::abs(radial - closed) < 1e-9);
        CHECK(std::abs(tensor - closed) < 1e-9);
      }
    }
  }
}

TEST_CASE("flow of the unit-ball indicator hits its closed probability form") {
  // Flow at s of the indicator of |u| <= R, evaluated at the origin, is the
  // Gaussian mass of the ball: 1 - exp(-R^2/s) in one complex dimension.
  const Symbol ball = Symbol::ball({cplx{0.0, 0.0}}, 1.0);
  const cplx at0 = heat_transform(ball, 0.5, CPoint{cplx{0.0, 0.0}},
                                  HeatMethod::radial);
  CHECK(std::abs(at0 - cplx{0.864664716763387308, 0.0}) < 1e-12);
  const cplx at_half = heat_transform(ball, 0.5, CPoint{cplx{0.5, 0.0}},
                                      HeatMethod::radial);
  CHECK(std::abs(at_half - cplx{0.730987939964090003, 0.0}) < 1e-11);
  // Off-center evaluation only sees |z|, so a rotated point gives the same value.
  const cplx rotated = heat_transform(ball, 0.5, CPoint{cplx{0.3, 0.4}},
                                      HeatMethod::radial);
  CHECK(std::abs(rotated - at_half) < 1e-12);
}

TEST_CASE("flowing a family that is closed under the flow stays in family") {
  const Symbol f = Symbol::gaussian(cplx{-1.0, 0.5});
  const double s = 0.6;
  const auto flowed = heat_flow_symbol(f, s, 1);
  REQUIRE(flowed.has_value());
  for (double r : {0.0, 1.0, 2.2}) {
    const CPoint z{cplx{r, -0.4 * r}};
    CHECK(std::abs(flowed->eval(z) - heat_transform(f, s, z)) < 1e-13);
  }
  CHECK_FALSE(heat_flow_symbol(Symbol::ball({cplx{0.0, 0.0}}, 1.0), s, 1)
                  .has_value());
}

TEST_CASE("semigroup property: closed composition and forced quadrature") {
  const CPoint pts[] = {CPoint{cplx{0.0, 0.0}}, CPoint{cplx{1.0, 0.0}},
                        CPoint{cplx{1.0, 1.0}}};
  const Symbol g = Symbol::gaussian(cplx{-1.0, 0.0});
  for (const CPoint& z : pts) {
    CHECK(semigroup_residual(g, 0.3, 0.4, z) < 1e-12);
  }
  const Symbol ball = Symbol::ball({cplx{0.0, 0.0}}, 1.0);
  for (const CPoint& z : pts) {
    CHECK(semigroup_residual(ball, 0.5, 0.5, z, {}, true) < 1e-7);
  }
}

TEST_CASE("admissibility and divergence refusal for growing Gaussians") {
  const Symbol grow = Symbol::gaussian(cplx{2.0, 0.0});
  CHECK(heat_admissible(grow, 0.4));
  CHECK_FALSE(heat_admissible(grow, 0.6));
  CHECK(heat_admissible(Symbol::ball({cplx{0.0, 0.0}}, 1.0), 100.0));
  CHECK_THROWS_AS(heat_transform(grow, 0.6, CPoint{cplx{0.0, 0.0}}),
                  NumericRefusal);
  // Right below the blow-up time the closed form is huge but finite.
  CHECK(std::isfinite(
      std::abs(heat_transform(grow, 0.49, CPoint{cplx{0.0, 0.0}}))));
}

TEST_CASE("berezin transform is the flow at the space's own time") {
  const FockParams p{1, 0.7};
  const Symbol g = Symbol::gaussian(cplx{-0.5, 0.0});
  for (double r : {0.0, 1.3}) {
    const CPoint z{cplx{r, r}};
    CHECK(std::abs(berezin_transform(p, g, z) - heat_transform(g, p.t, z)) <
          1e-13);
  }
}

TEST_CASE("higher-dimensional radial reduction matches the tensor integrator") {
  const Symbol g = Symbol::gaussian(cplx{-0.8, 0.0});
  const double s = 0.5;
  for (int n : {2, 3}) {
    auto profile = [&](double r) { return g.radial_value(r); };
    const double rho = 0.9;
    const cplx reduced =
        heat_radial(n, s, profile, rho, {}, g.support_radius());
    // Reference: the closed form in dimension n at a point of radius rho.
    CPoint z = radial_point(n, rho);
    const cplx closed = heat_transform(g, s, z, HeatMethod::closed_form);
    CHECK(std::abs(reduced - closed) < 1e-10);
  }
}

TEST_CASE("two-point pairing collapses to the flow on the diagonal") {
  const FockParams p{1, 1.0};
  const Symbol ball = Symbol::ball({cplx{0.0, 0.0}}, 1.0);
  const CPoint z{cplx{0.6, -0.3}};
  const cplx pair = kernel_pairing(p, ball, z, z);
  const cplx flow = heat_transform(ball, p.t, z, HeatMethod::radial);
  CHECK(std::abs(pair - flow) < 1e-9);
}

TEST_CASE("interpolation identity between times holds off the diagonal") {
  const FockParams p{1, 1.0};
  const CPoint w{cplx{0.8, 0.2}};
  const CPoint z{cplx{-0.3, 0.6}};
  for (double s : {0.25, 0.5}) {
    const auto idg = check_offdiag_identity(p, Symbol::gaussian(cplx{-1.0, 0.0}),
                                            s, w, z);
    CHECK(idg.residual < 1e-10);
    const auto idb = check_offdiag_identity(
        p, Symbol::ball({cplx{0.0, 0.0}}, 1.0), s, w, z);
    CHECK(idb.residual < 1e-7);
  }
}

TEST_CASE("off-diagonal Gaussian decay: majorant meets the bound at |g| const") {
  const FockParams p{1, 1.0};
  const CPoint w{cplx{1.2, 0.0}};
  const CPoint z{cplx{-0.8, 0.9}};
  const auto unit = check_offdiag_bound(p, Symbol::constant(1.0), w, z);
  CHECK(unit.ok);
  CHECK(unit.bound == doctest::Approx(std::exp(-dist2(w, z) / 4.0)).epsilon(1e-14));
  CHECK(std::abs(unit.majorant - unit.bound) < 1e-12);
  // Strictly smaller modulus inside the ball complement => strict slack.
  const auto ball = check_offdiag_bound(p, Symbol::ball({cplx{0.0, 0.0}}, 1.0),
                                        w, z);
  CHECK(ball.ok);
  CHECK(ball.value <= ball.majorant + 1e-12);
  CHECK(ball.majorant < ball.bound - 1e-6);
  CHECK_THROWS_AS(
      check_offdiag_bound(p, Symbol::gaussian(cplx{0.5, 0.0}), w, z),
      NumericRefusal);
}

TEST_CASE("mean oscillation: constants vanish, a linear slope is flat") {
  const FockParams p{1, 1.0};
  const auto constant = [](cplx) { return cplx{2.5, -1.0}; };
  CHECK(mean_oscillation(p, constant, cplx{0.7, -0.3}) < 1e-12);
  // f(w) = Re w: the oscillation is the mean absolute value of a centered
  // Gaussian of variance t/2, i.e. 1/sqrt(pi) at t = 1, at every center.
  const auto realpart = [](cplx w) { return cplx{w.real(), 0.0}; };
  for (cplx z : {cplx{0.0, 0.0}, cplx{1.0, -2.0}}) {
    CHECK(mean_oscillation(p, realpart, z) ==
          doctest::Approx(0.564189583547756287).epsilon(1e-6));
  }
  PlaneGrid grid;
  grid.extent = 1.0;
  grid.step = 0.5;
  CHECK(bmo_seminorm(p, constant, grid) < 1e-12);
  CHECK(bmo_seminorm(p, realpart, grid) ==
        doctest::Approx(0.564189583547756287).epsilon(1e-6));
}

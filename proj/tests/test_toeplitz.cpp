#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <vector>

#include "doctest.h"
#include "focklab/errors.hpp"
#include "focklab/fock.hpp"
#include "focklab/special.hpp"
#include "focklab/symbol.hpp"
#include "focklab/toeplitz.hpp"

using namespace focklab;

TEST_CASE("gaussian-symbol diagonals: closed form vs moment quadrature") {
  const FockParams p{1, 1.0};
  for (cplx lambda : {cplx{0.3, 0.4}, cplx{-1.0, 0.0}, cplx{2.0, 0.0}}) {
    const Symbol f = Symbol::gaussian(lambda);
    const auto closed = radial_toeplitz_diagonal(f, p, 12);
    const auto quad = radial_toeplitz_diagonal(f, p, 12, true);
    REQUIRE(closed.size() == 13);
    REQUIRE(quad.size() == 13);
    for (int q = 0; q <= 12; ++q) {
      const cplx expect = std::pow(cplx{1.0, 0.0} - lambda, -(q + 1.0));
      CHECK(std::abs(closed[q] - expect) < 1e-12 * std::abs(expect));
      // The moment path absorbs the modified exponential into the
      // integration variable, so it sees the continued value at lambda = 2
      // just as the closed form does.
      CHECK(std::abs(quad[q] - expect) < 1e-10 * std::abs(expect));
    }
  }
}

TEST_CASE("step-symbol diagonals are incomplete-gamma differences") {
  // d_q for the indicator of |z| <= 1 at t = 1, n = 1 is P(q+1, 1).
  const FockParams p{1, 1.0};
  const Symbol ball = Symbol::ball({cplx{0.0, 0.0}}, 1.0);
  const auto d = radial_toeplitz_diagonal(ball, p, 8);
  for (int q = 0; q <= 8; ++q) {
    CHECK(std::abs(d[q] - cplx{special::lower_reg_gamma(q + 1.0, 1.0), 0.0}) <
          1e-12);
  }
  CHECK(std::abs(d[0] - cplx{0.632120558828557678, 0.0}) < 1e-14);
}

TEST_CASE("tensor quadrature reproduces the diagonal for radial symbols") {
  const FockParams p{1, 1.0};
  const Symbol f = Symbol::gaussian(cplx{-1.0, 0.0});
  const auto T = toeplitz_matrix(f, p, 8, ToeplitzMethod::tensor_quadrature);
  const auto diag = radial_toeplitz_diagonal(f, p, 8);
  double offdiag = 0.0;
  for (int i = 0; i < T.dim(); ++i) {
    for (int j = 0; j < T.dim(); ++j) {
      if (i == j) {
        const int q = T.basis[i].order();
        CHECK(std::abs(T.entries(i, i) - diag[q]) < 1e-10);
      } else {
        offdiag = std::max(offdiag, std::abs(T.entries(i, j)));
      }
    }
  }
  CHECK(offdiag < 1e-10);
}

TEST_CASE("hermitian defect vanishes exactly for real symbols") {
  const FockParams p{1, 1.0};
  const auto real_sym = toeplitz_matrix(Symbol::ball({cplx{0.3, 0.0}}, 1.0), p, 6);
  CHECK(hermitian_defect(real_sym) < 1e-12);
  const auto complex_sym =
      toeplitz_matrix(Symbol::gaussian(cplx{-0.5, 0.5}), p, 6);
  CHECK(hermitian_defect(complex_sym) > 1e-3);
}

TEST_CASE("compression norms: diagonal fast path and dense agreement") {
  const FockParams p{1, 1.0};
  const Symbol f = Symbol::gaussian(cplx{-1.0, 0.0});
  const auto T = toeplitz_matrix(f, p, 10);
  const auto rep = operator_norm(T, true);
  CHECK(rep.diagonal);
  // Diagonal entries 2^{-(q+1)} peak at q = 0.
  CHECK(rep.norm == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(rep.attained == 0);
  REQUIRE(rep.trace.size() == 11);
  for (std::size_t i = 1; i < rep.trace.size(); ++i) {
    CHECK(rep.trace[i] >= rep.trace[i - 1] - 1e-15);
  }
  CHECK(spectral_norm(T.entries) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("berezin transform of truncations matches the heat flow") {
  const FockParams p{1, 1.0};
  // Identity data: constant symbol 1 has Berezin transform 1 everywhere.
  const auto I = toeplitz_matrix(Symbol::constant(1.0), p, 30);
  const auto at1 = berezin_of_operator(I, CPoint{cplx{1.0, 0.5}});
  CHECK(std::abs(at1.value - cplx{1.0, 0.0}) < 2e-7);
  CHECK(at1.tail_bound < 2e-6);
  // Gaussian lambda = -1: flow at s = t = 1 is (1+ |z|^2 ... ) closed form:
  // (1 - s lambda)^{-1} exp(lambda |z|^2 / (1 - s lambda)) = 0.5 at z = 0.
  const auto G = toeplitz_matrix(Symbol::gaussian(cplx{-1.0, 0.0}), p, 30);
  const auto at0 = berezin_of_operator(G, CPoint{cplx{0.0, 0.0}});
  CHECK(std::abs(at0.value - cplx{0.5, 0.0}) < 1e-12);
  // Polarized off-diagonal entry for the identity: <k_z, k_w> has modulus
  // exp(-|w-z|^2/2) = e^{-2} at |w - z| = 2.
  const CPoint z{cplx{1.0, 0.0}};
  const CPoint w{cplx{-1.0, 0.0}};
  const auto off = berezin_of_operator(I, z, &w);
  CHECK(std::abs(std::abs(off.value) - 0.135335283236612692) < 1e-7);
  // Refusal when the truncation cannot resolve the requested point.
  CHECK_THROWS_AS(
      berezin_of_operator(toeplitz_matrix(Symbol::constant(1.0), p, 4),
                          CPoint{cplx{4.0, 0.0}}),
      NumericRefusal);
}

TEST_CASE("berezin_pairing is the raw sesquilinear truncation value") {
  const FockParams p{1, 1.0};
  const auto I = toeplitz_matrix(Symbol::constant(1.0), p, 40);
  const CPoint z{cplx{0.5, 0.5}};
  const CPoint w{cplx{-0.25, 0.75}};
  // <k_z, k_w> = K(w, z) e^{-(|z|^2+|w|^2)/2} = exp(w . conj(z) - ...)
  const cplx expect = std::exp(herm_dot(w, z) - norm2(z) / 2.0 - norm2(w) / 2.0);
  CHECK(std::abs(berezin_pairing(I, z, w) - expect) < 1e-12);
}

TEST_CASE("integral-operator form reproduces direct projections") {
  const FockParams p{1, 1.0};
  // f = 1: T_1 = identity, so the image of g = 1 evaluated via the kernel is 1.
  const auto one = [](const CPoint&) { return cplx{1.0, 0.0}; };
  const cplx id_val = apply_integral_operator(Symbol::constant(1.0), one, p,
                                              CPoint{cplx{0.3, -0.2}});
  CHECK(std::abs(id_val - cplx{1.0, 0.0}) < 1e-8);
  // f = e^{-|z|^2} acts diagonally: T_f e_1 = d_1 e_1 with
  // d_1 = (1 - lambda)^{-2} = 1/4, and e_1(1) = 1.
  const auto e1 = [](const CPoint& w) { return w.v[0]; };
  const cplx g_val = apply_integral_operator(Symbol::gaussian(cplx{-1.0, 0.0}),
                                             e1, p, CPoint{cplx{1.0, 0.0}});
  CHECK(std::abs(g_val - cplx{0.25, 0.0}) < 1e-8);
}

TEST_CASE("gaussian eigenvalue report tracks both boundedness verdicts") {
  // lambda on the critical circle |1 - lambda| = 1: unitary truncation at t=1.
  const cplx lambda = cplx{1.0, 0.0} - std::polar(1.0, 3.14159265358979324 / 4);
  const auto rep = glambda_report(lambda, 1.0, 0.25, 1, 20);
  CHECK(rep.operator_bounded);
  CHECK(rep.unitary_truncation);
  CHECK(rep.max_abs_dev < 1e-12);
  REQUIRE(rep.eigenvalues.size() == 21);
  for (const cplx& ev : rep.eigenvalues) {
    CHECK(std::abs(std::abs(ev) - 1.0) < 1e-12);
  }
  // Decaying Gaussian: bounded operator and bounded flow.
  const auto dec = glambda_report(cplx{-1.0, 0.0}, 1.0, 0.25, 1, 5);
  CHECK(dec.operator_bounded);
  CHECK(dec.heat_bounded);
  // Growing Gaussian lambda = 0.5: |1 - 0.5| = 0.5 < 1, unbounded operator.
  const auto grow = glambda_report(cplx{0.5, 0.0}, 1.0, 0.25, 1, 5);
  CHECK_FALSE(grow.operator_bounded);
}

TEST_CASE("export and readback round-trips the matrix bytes") {
  const FockParams p{1, 1.0};
  const auto T = toeplitz_matrix(Symbol::gaussian(cplx{-0.5, 0.25}), p, 5);
  const auto dir = std::filesystem::temp_directory_path();
  const auto bin = dir / "focklab_test_op.bin";
  const auto side = dir / "focklab_test_op.json";
  export_operator(T, bin, side);
  const Eigen::MatrixXcd back = read_operator_matrix(bin);
  REQUIRE(back.rows() == T.entries.rows());
  REQUIRE(back.cols() == T.entries.cols());
  CHECK((back - T.entries).cwiseAbs().maxCoeff() == 0.0);
  std::filesystem::remove(bin);
  std::filesystem::remove(side);
}

TEST_CASE("construction preconditions and refusals") {
  const FockParams p{1, 1.0};
  CHECK_THROWS_AS(toeplitz_matrix(Symbol::constant(1.0), p, -1),
                  PreconditionError);
  CHECK_THROWS_AS(toeplitz_matrix(Symbol::constant(1.0), p, 1000),
                  PreconditionError);
  // Too-coarse explicit quadrature order must refuse, not silently degrade.
  CHECK_THROWS_AS(
      radial_toeplitz_diagonal(Symbol::ball({cplx{0.0, 0.0}}, 1.0), p, 40,
                               true, 4),
      NumericRefusal);
  // Gaussian symbol at the pole 1 - t lambda = 0 has no finite diagonal.
  CHECK_THROWS_AS(radial_toeplitz_diagonal(Symbol::gaussian(cplx{1.0, 0.0}), p, 4),
                  PreconditionError);
}

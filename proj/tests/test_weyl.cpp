#include <cmath>
#include <complex>
#include <vector>

#include "doctest.h"
#include "focklab/errors.hpp"
#include "focklab/fock.hpp"
#include "focklab/quadrature.hpp"
#include "focklab/special.hpp"
#include "focklab/symbol.hpp"
#include "focklab/toeplitz.hpp"
#include "focklab/weyl.hpp"

using namespace focklab;

namespace {

MultiIndex mono(int k) {
  MultiIndex m;
  m.n = 1;
  m.m[0] = static_cast<std::uint16_t>(k);
  return m;
}

// Direct quadrature oracle for <W_z e_j, e_i>_1 in one dimension:
// W_z e_j(w) = k_z(w) e_j(w - z).
cplx displacement_entry_oracle(cplx z, int i, int j) {
  const FockParams p{1, 1.0};
  const CPoint zp{z};
  return quad::integrate_gaussian(1, 1.0, 60, [&](const CPoint& w) {
    const cplx image = kernel_eval(p, w, zp, true) *
                       onb_eval(p, mono(j), CPoint{w.v[0] - z});
    return image * std::conj(onb_eval(p, mono(i), w));
  });
}

}  // namespace

TEST_CASE("column zero of the displacement matrix has a closed form") {
  // W_z e_0 = k_z, so m(i, 0) = <k_z, e_i> = e^{-|z|^2/2} conj(z)^i / sqrt(i!).
  const FockParams p{1, 1.0};
  const cplx z{0.3, 0.2};
  const auto W = weyl_matrix(p, CPoint{z}, 12, 6);
  for (int i = 0; i <= 8; ++i) {
    const cplx expect = std::exp(-std::norm(z) / 2.0) *
                        std::pow(std::conj(z), i) /
                        std::sqrt(special::factorial(i));
    CHECK(std::abs(W.m(i, 0) - expect) < 1e-12);
  }
  CHECK(std::abs(W.m(3, 0) -
                 cplx{-0.003443005709758202, -0.017597584738764142}) < 1e-12);
}

TEST_CASE("generic entries match an independent quadrature oracle") {
  const FockParams p{1, 1.0};
  const cplx z{0.4, -0.6};
  const auto W = weyl_matrix(p, CPoint{z}, 10, 4);
  for (int i = 0; i <= 3; ++i) {
    for (int j = 0; j <= 3; ++j) {
      CHECK(std::abs(W.m(i, j) - displacement_entry_oracle(z, i, j)) < 1e-10);
    }
  }
}

TEST_CASE("audited columns behave unitarily; the audit is honest") {
  const FockParams p{1, 1.0};
  const auto W = weyl_matrix(p, CPoint{cplx{0.5, 0.3}}, 40, 20);
  CHECK(W.audited_degree >= 14);
  CHECK(weyl_unitarity_defect(W) < 1e-8);
  // Columns near the cap leak mass out of any fixed row window.
  REQUIRE(W.column_defect.size() == W.cols.size());
  CHECK(W.column_defect.front() < 1e-10);
  // A tiny row window cannot certify much: the audit must degrade, not lie.
  const auto tight = weyl_matrix(p, CPoint{cplx{2.0, 0.0}}, 6, 6);
  CHECK(tight.audited_degree < 6);
}

TEST_CASE("composition law holds on audited columns") {
  const FockParams p{1, 1.0};
  const cplx z{0.4, 0.1};
  const cplx w{-0.2, 0.3};
  CHECK(weyl_composition_defect(p, CPoint{z}, CPoint{w}, 40) < 1e-6);
  // z = -w composes to the identity up to the symplectic phase.
  CHECK(weyl_composition_defect(p, CPoint{z}, CPoint{-z}, 40) < 1e-6);
}

TEST_CASE("conjugating the identity returns the identity block") {
  const FockParams p{1, 1.0};
  const auto I = toeplitz_matrix(Symbol::constant(1.0), p, 40);
  const auto conj = weyl_conjugate(I, CPoint{cplx{0.7, -0.2}});
  CHECK(conj.audited_degree >= 14);
  CHECK(conj.unitarity_defect < 1e-8);
  const Eigen::MatrixXcd& M = conj.conjugated.entries;
  Eigen::MatrixXcd eye = Eigen::MatrixXcd::Identity(M.rows(), M.cols());
  CHECK((M - eye).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("conjugation preserves the compression norm of a step operator") {
  const FockParams p{1, 1.0};
  const Symbol step = Symbol::radial_step({1.0, 2.0},
                                          {cplx{1.0, 0.0}, cplx{0.25, 0.0}});
  const auto T = toeplitz_matrix(step, p, 40);
  const double base = operator_norm(T).norm;
  const auto conj = weyl_conjugate(T, CPoint{cplx{0.6, 0.4}});
  const double moved = spectral_norm(conj.conjugated.entries);
  // The conjugated block only sees audited columns, so it can only lose a
  // whisker of norm; it must not exceed the invariant value.
  CHECK(moved <= base + 1e-8);
  CHECK(std::abs(moved - base) < 1e-4);
}

TEST_CASE("displacement machinery is pinned to the t = 1 space") {
  const FockParams p{1, 2.0};
  CHECK_THROWS_AS(weyl_matrix(p, CPoint{cplx{0.1, 0.0}}, 8, 4),
                  PreconditionError);
}

TEST_CASE("conjugation refuses when the audit cannot certify the block") {
  const FockParams p{1, 1.0};
  const auto I = toeplitz_matrix(Symbol::constant(1.0), p, 6);
  WeylOptions opt;
  opt.audit_degree = 6;
  CHECK_THROWS_AS(weyl_conjugate(I, CPoint{cplx{2.5, 0.0}}, opt),
                  NumericRefusal);
}

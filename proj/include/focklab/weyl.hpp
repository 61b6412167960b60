#pragma once

// Displacement operators on the t = 1 space: W_z f(w) = k_z(w) f(w - z),
// with W_z^* = W_{-z} and the composition law
// W_z W_w = e^{-i Im(z . conj(w))} W_{z+w}.
//
// Truncated matrices are built by quadrature pairings <W_z e_j, e_i>_1 on a
// rectangular block: rows run over the basis up to `row_degree`, columns up
// to `col_degree`.  A column of degree j is trustworthy only when the image
// W_z e_j keeps nearly all of its mass inside the row window, so every
// matrix carries a per-column mass audit, and the law checks (unitarity,
// composition, conjugation) are evaluated on audited columns.  Square
// truncations are never near-unitary: the top-degree columns leak mass past
// any degree cap, which is why the audited rectangular block is the unit of
// account here.

#include <Eigen/Dense>
#include <vector>

#include "focklab/fock.hpp"
#include "focklab/multiindex.hpp"
#include "focklab/toeplitz.hpp"

namespace focklab {

struct WeylOptions {
  int quad_order = 80;      // tensor Gauss-Hermite order for the pairings
  int audit_degree = 14;    // column degrees that must pass the mass audit
  double audit_tol = 1e-8;  // largest acceptable per-column mass defect
};

struct WeylMatrix {
  FockParams params;  // t = 1
  CPoint z;
  int row_degree = 0;
  int col_degree = 0;
  std::vector<MultiIndex> rows, cols;
  Eigen::MatrixXcd m;  // m(i, j) = <W_z e_{cols[j]}, e_{rows[i]}>_1
  std::vector<double> column_defect;  // 1 - in-window mass, per column
  int audited_degree = -1;  // largest J with every degree <= J column passing
};

// Rectangular displacement matrix with the column mass audit.
WeylMatrix weyl_matrix(const FockParams& p, const CPoint& z, int row_degree,
                       int col_degree, const WeylOptions& opt = {});

// ||W_a^H W_a - I|| over the audited columns of W.
double weyl_unitarity_defect(const WeylMatrix& W);

struct WeylConjugation {
  TruncatedOperator conjugated;  // audited block of W_z^H T W_z
  int audited_degree = -1;
  double unitarity_defect = 0.0;
};

// A_z = W_z^* A W_z on the audited block.  The rows of W_z extend to the
// degree of T; the columns to opt.audit_degree.  Refuses when the audit
// cannot certify opt.audit_degree columns at the given truncation degree.
WeylConjugation weyl_conjugate(const TruncatedOperator& T, const CPoint& z,
                               const WeylOptions& opt = {});

// || W_z W_w - e^{-i Im(z . conj(w))} W_{z+w} || over audited columns, with
// the middle index of the product running over the full row window.
double weyl_composition_defect(const FockParams& p, const CPoint& z,
                               const CPoint& w, int row_degree,
                               const WeylOptions& opt = {});

}  // namespace focklab

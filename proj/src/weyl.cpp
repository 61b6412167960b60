#include "focklab/weyl.hpp"

#include <cmath>
#include <complex>
#include <span>
#include <string>

#include "focklab/errors.hpp"
#include "focklab/quadrature.hpp"
#include "focklab/simd.hpp"

namespace focklab {

namespace {

void check_displacement_space(const FockParams& p, const CPoint& z) {
  p.validate();
  if (p.t != 1.0)
    throw PreconditionError("t",
                            "displacement operators live on the t = 1 space");
  if (z.n != p.n)
    throw PreconditionError("z",
                            "displacement point must live in dimension n");
}

// Row-degree estimate that lets a column of degree J pass a mass audit for
// displacement by z: degree spread of W_z e_m is Poisson-like around
// J + |z|^2 with width ~ sqrt(J+1)(1+|z|).
int adequate_row_degree(int audit_degree, const CPoint& z) {
  const double a = std::sqrt(norm2(z));
  const double d = audit_degree + a * a +
                   12.0 * std::sqrt(audit_degree + 1.0) * (1.0 + a) + 10.0;
  return static_cast<int>(std::ceil(d));
}

}  // namespace

WeylMatrix weyl_matrix(const FockParams& p, const CPoint& z, int row_degree,
                       int col_degree, const WeylOptions& opt) {
  check_displacement_space(p, z);
  if (row_degree < 0 || row_degree > kMaxDegree || col_degree < 0 ||
      col_degree > kMaxDegree)
    throw PreconditionError("degree", "degrees must lie in [0, " +
                                          std::to_string(kMaxDegree) + "]");

  WeylMatrix W;
  W.params = p;
  W.z = z;
  W.row_degree = row_degree;
  W.col_degree = col_degree;
  W.rows = enumerate_multiindices(p.n, row_degree);
  W.cols = enumerate_multiindices(p.n, col_degree);

  const quad::PlaneNodes nodes = quad::gaussian_nodes(p.n, 1.0, opt.quad_order);
  const std::size_t K = nodes.count();

  // basis values at the nodes (rows) and at the displaced nodes (columns)
  const std::vector<cplx> row_tab = onb_node_table(p, W.rows, nodes.coords);
  std::vector<cplx> shifted(nodes.coords.size());
  for (std::size_t k = 0; k < K; ++k)
    for (int j = 0; j < p.n; ++j)
      shifted[k * p.n + j] =
          nodes.coords[k * p.n + j] - z.v[static_cast<std::size_t>(j)];
  const std::vector<cplx> col_tab = onb_node_table(p, W.cols, shifted);

  std::vector<cplx> kvals(K);
  for (std::size_t k = 0; k < K; ++k) {
    CPoint u;
    u.n = p.n;
    for (int j = 0; j < p.n; ++j)
      u.v[static_cast<std::size_t>(j)] = nodes.coords[k * p.n + j];
    kvals[k] = kernel_eval(p, u, z, /*normalized=*/true);
  }

  const std::size_t MR = W.rows.size();
  const std::size_t MC = W.cols.size();
  W.m.resize(static_cast<Eigen::Index>(MR), static_cast<Eigen::Index>(MC));
  W.column_defect.resize(MC);
  const std::span<const double> wts(nodes.w);
  std::vector<cplx> col(K);
  for (std::size_t j = 0; j < MC; ++j) {
    const cplx* cj = col_tab.data() + j * K;
    for (std::size_t k = 0; k < K; ++k) col[k] = kvals[k] * cj[k];
    double mass = 0.0;
    for (std::size_t i = 0; i < MR; ++i) {
      const std::span<const cplx> bi(row_tab.data() + i * K, K);
      const cplx e = simd::weighted_cdotc(wts, col, bi);
      W.m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = e;
      mass += std::norm(e);
    }
    W.column_defect[j] = 1.0 - mass;  // ||W_z e_j|| = 1
  }

  W.audited_degree = -1;
  for (int d = 0; d <= col_degree; ++d) {
    const std::size_t md = multiindex_count(p.n, d);
    bool ok = true;
    for (std::size_t j = 0; j < md; ++j)
      if (std::abs(W.column_defect[j]) > opt.audit_tol) ok = false;
    if (!ok) break;
    W.audited_degree = d;
  }
  return W;
}

double weyl_unitarity_defect(const WeylMatrix& W) {
  if (W.audited_degree < 0)
    throw NumericRefusal(
        "no audited columns: every column leaks past the row window",
        "row degree >= " +
            std::to_string(adequate_row_degree(0, W.z)) +
            " should admit degree-0 columns");
  const Eigen::Index mj = static_cast<Eigen::Index>(
      multiindex_count(W.params.n, W.audited_degree));
  const Eigen::MatrixXcd wa = W.m.leftCols(mj);
  const Eigen::MatrixXcd g =
      wa.adjoint() * wa - Eigen::MatrixXcd::Identity(mj, mj);
  return spectral_norm(g);
}

WeylConjugation weyl_conjugate(const TruncatedOperator& T, const CPoint& z,
                               const WeylOptions& opt) {
  check_displacement_space(T.params, z);
  const WeylMatrix W =
      weyl_matrix(T.params, z, T.degree, opt.audit_degree, opt);
  if (W.audited_degree < opt.audit_degree)
    throw NumericRefusal(
        "mass audit certifies columns only up to degree " +
            std::to_string(W.audited_degree) + " at truncation degree " +
            std::to_string(T.degree),
        "truncation degree >= " +
            std::to_string(adequate_row_degree(opt.audit_degree, z)) +
            " should certify the requested audit degree");

  const Eigen::Index mj = static_cast<Eigen::Index>(
      multiindex_count(T.params.n, W.audited_degree));
  const Eigen::MatrixXcd wa = W.m.leftCols(mj);

  WeylConjugation out;
  out.audited_degree = W.audited_degree;
  out.unitarity_defect = weyl_unitarity_defect(W);
  out.conjugated.params = T.params;
  out.conjugated.degree = W.audited_degree;
  out.conjugated.basis = enumerate_multiindices(T.params.n, W.audited_degree);
  out.conjugated.entries = wa.adjoint() * T.entries * wa;
  out.conjugated.symbol_text = T.symbol_text;
  out.conjugated.method = "weyl-conjugate/" + T.method;
  return out;
}

double weyl_composition_defect(const FockParams& p, const CPoint& z,
                               const CPoint& w, int row_degree,
                               const WeylOptions& opt) {
  check_displacement_space(p, z);
  check_displacement_space(p, w);
  const WeylMatrix Wz = weyl_matrix(p, z, row_degree, row_degree, opt);
  const WeylMatrix Ww = weyl_matrix(p, w, row_degree, opt.audit_degree, opt);
  const WeylMatrix Wzw =
      weyl_matrix(p, z + w, row_degree, opt.audit_degree, opt);
  const int J = std::min(Ww.audited_degree, Wzw.audited_degree);
  if (J < 0)
    throw NumericRefusal(
        "mass audit certifies no columns at row degree " +
            std::to_string(row_degree),
        "row degree >= " +
            std::to_string(adequate_row_degree(opt.audit_degree, z + w)) +
            " should certify the composition block");

  const Eigen::Index mj = static_cast<Eigen::Index>(multiindex_count(p.n, J));
  const cplx phase = std::exp(cplx{0.0, -std::imag(herm_dot(z, w))});
  const Eigen::MatrixXcd diff =
      Wz.m * Ww.m.leftCols(mj) - phase * Wzw.m.leftCols(mj);
  return spectral_norm(diff);
}

}  // namespace focklab

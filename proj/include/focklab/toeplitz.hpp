#pragma once

// Finite truncations of Toeplitz operators (and the antilinear Hankel-type
// companion) in the graded monomial basis, together with their spectral data,
// operator Berezin transforms, and the integral-operator representation.
//
// A truncation at degree D stores the matrix M(i, j) = <f e_{m_j}, e_{m_i}>_t
// over the graded basis enumeration.  All reported norms are compression
// norms: truncations approximate the operator norm from below, and nothing
// here claims an upper bound on the norm of the untruncated operator.

#include <Eigen/Dense>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "focklab/fock.hpp"
#include "focklab/heat.hpp"
#include "focklab/multiindex.hpp"
#include "focklab/symbol.hpp"

namespace focklab {

enum class ToeplitzMethod {
  automatic,          // closed diagonal when available, else tensor quadrature
  analytic_diagonal,  // closed-form diagonal (radial symbol families)
  radial_quadrature,  // diagonal via one-dimensional moment quadrature
  tensor_quadrature,  // full matrix via tensor Gauss-Hermite nodes
};

struct TruncatedOperator {
  FockParams params;
  int degree = 0;
  std::vector<MultiIndex> basis;  // graded enumeration, side binomial(D+n, n)
  Eigen::MatrixXcd entries;       // entries(i, j) = <f e_{m_j}, e_{m_i}>_t
  std::string symbol_text;        // descriptor of the symbol it was built from
  std::string method;             // construction provenance

  int dim() const { return static_cast<int>(basis.size()); }
};

// Diagonal values d_q indexed by total degree q = 0..max_total_degree for a
// radial symbol: d_q = Gamma(q+n)^{-1} * integral of f(sqrt(t x)) x^{q+n-1}
// e^{-x} dx.  The closed path evaluates the per-family formulas (the Gaussian
// family by analytic continuation of (1 - t lambda)^{-(q+n)} whenever
// 1 - t lambda != 0); the quadrature path rebuilds the same values from
// one-dimensional rules and refuses when the rule order cannot integrate the
// requested degree exactly.
std::vector<cplx> radial_toeplitz_diagonal(const Symbol& f, const FockParams& p,
                                           int max_total_degree,
                                           bool force_quadrature = false,
                                           int quad_order = 0);

// Truncation of the Toeplitz operator with symbol f at degree D.
// quad_order = 0 picks a default adequate for the degree; an explicit order
// too small for exactness at degree D triggers a refusal naming the required
// order.  Radial symbols produce exactly diagonal matrices.
TruncatedOperator toeplitz_matrix(const Symbol& f, const FockParams& p,
                                  int degree,
                                  ToeplitzMethod method = ToeplitzMethod::automatic,
                                  int quad_order = 0);

// Antilinear Hankel-type companion at t = 1: entries
// H(i, j) = <f * conj(e_{m_j}), e_{m_i}>_1.  The matrix represents the
// antilinear map g -> P(f * conj(g)) under the convention "conjugate the
// input coefficient vector first": if g has coefficients a in the graded
// basis, the image has coefficients H * conj(a).  No antilinear matrix
// algebra is implemented beyond this convention.
TruncatedOperator hankel_antilinear_matrix(
    const std::function<cplx(const CPoint&)>& f, const std::string& descriptor,
    const FockParams& p, int degree, int quad_order = 0);
TruncatedOperator hankel_antilinear_matrix(const Symbol& f, const FockParams& p,
                                           int degree, int quad_order = 0);

// Largest singular value of a dense complex matrix (via the Hermitian square;
// adequate at the tolerances used throughout).
double spectral_norm(const Eigen::MatrixXcd& m);

struct SpectralReport {
  double norm = 0.0;          // largest singular value of the truncation
  bool diagonal = false;      // diagonal fast path used
  int attained = -1;          // basis index of max |entry| on the fast path
  std::vector<double> trace;  // compression norm per sub-degree 0..D
};

// Compression norm of the truncation.  Off-diagonal mass below 1e-12 takes
// the diagonal fast path (max modulus with the attaining index).  With
// `convergence_trace` the report also lists the norms of the leading graded
// blocks, which are nondecreasing in the degree.
SpectralReport operator_norm(const TruncatedOperator& T,
                             bool convergence_trace = false);

// Maximum modulus of entries(i,j) - conj(entries(j,i)): zero for truncations
// of self-adjoint (real-symbol) operators.
double hermitian_defect(const TruncatedOperator& T);

// c(w)^H M c(z) where c are normalized-kernel coefficient vectors: the
// truncation's value for <A k_z, k_w>_t.  No tail policing; callers that
// need an error bar use berezin_of_operator.
cplx berezin_pairing(const TruncatedOperator& T, const CPoint& z,
                     const CPoint& w);

struct OperatorBerezin {
  cplx value;         // c(w)^H M c(z)
  double tail_bound;  // ||T|| * (sqrt tail mass at z + sqrt tail mass at w)
};

// Berezin transform of the truncated operator at z (diagonal) or the
// polarized value <A k_z, k_w> when w is supplied.  Requires the kernel
// coefficient tails at both points to sit below tail_tol, otherwise refuses
// and names the smallest adequate degree.
OperatorBerezin berezin_of_operator(const TruncatedOperator& T, const CPoint& z,
                                    const CPoint* w = nullptr,
                                    double tail_tol = 1e-6);

// The operator as an integral operator: value of
//   integral of  exp(|z-w|^2/(2t) + Re(z . conj(w))/t) * <f k_w, k_z>_t
//                * g(w)  dmu_t(w),
// which reproduces the direct projection <f g, K_z>_t.  The inner two-point
// transform runs through kernel_pairing; the outer rule is Gauss-Hermite of
// the given order (too-coarse orders are refused).
cplx apply_integral_operator(const Symbol& f,
                             const std::function<cplx(const CPoint&)>& g,
                             const FockParams& p, const CPoint& z,
                             int outer_order = 60,
                             const PairingOptions& inner = {});

struct GLambdaReport {
  cplx lambda;
  double t = 0.0;
  double s = 0.0;
  int n = 0;
  int dmax = 0;
  std::vector<cplx> eigenvalues;  // (1 - t lambda)^{-(q+n)}, q = 0..dmax
  bool operator_bounded = false;  // |1 - t lambda| >= 1
  bool heat_bounded = false;      // |1 - 2 s lambda| >= 1
  cplx dilation_factor;           // nu = 1/(1 - t lambda)
  bool unitary_truncation = false;  // t = 1 and |nu| = 1 within 1e-12
  double max_abs_dev = 0.0;  // max | |eigenvalue| - 1 | when unitary_truncation
};

// Diagonal eigenvalue family for the Gaussian symbol exp(lambda |z|^2)
// together with the boundedness verdicts for the operator and for its
// time-s flow.  Defined by analytic continuation for every lambda with
// 1 - t lambda != 0.
GLambdaReport glambda_report(cplx lambda, double t, double s, int n, int dmax);

// Versioned binary container (column-major re/im pairs) plus a JSON sidecar
// carrying params, degree, basis order hash, and provenance.
void export_operator(const TruncatedOperator& T,
                     const std::filesystem::path& binary_path,
                     const std::filesystem::path& sidecar_path);

// Reads back the matrix payload of export_operator (round-trip checks).
Eigen::MatrixXcd read_operator_matrix(const std::filesystem::path& binary_path);

}  // namespace focklab

#pragma once

#include <array>
#include <complex>
#include <initializer_list>
#include <span>
#include <vector>

#include "focklab/multiindex.hpp"

// Core geometry of the Gaussian-weighted holomorphic function spaces over
// C^n: the probability measure mu_t with density (pi t)^(-n) e^(-|z|^2/t),
// the reproducing kernel K^t(w, z) = e^(herm_dot(w, z)/t), the monomial
// orthonormal basis e_m(z) = z^m / sqrt(t^|m| m!), and the expansion of
// normalized kernel vectors in that basis.

namespace focklab {

using cplx = std::complex<double>;

struct FockParams {
  int n = 1;       // complex dimension (1..3)
  double t = 1.0;  // Gaussian time/scale parameter, t > 0

  void validate() const;
};

// A point of C^n with small fixed storage.
struct CPoint {
  std::array<cplx, kMaxComplexDim> v{};
  int n = 1;

  CPoint() = default;
  explicit CPoint(cplx z0) : n(1) { v[0] = z0; }
  CPoint(std::initializer_list<cplx> zs);

  cplx operator[](int j) const { return v[j]; }
  cplx& operator[](int j) { return v[j]; }
  bool operator==(const CPoint&) const = default;
};

CPoint operator+(const CPoint& a, const CPoint& b);
CPoint operator-(const CPoint& a, const CPoint& b);
CPoint operator*(double s, const CPoint& a);

// (r, 0, ..., 0) in C^n: the canonical representative of radius r.
CPoint radial_point(int n, double r);

// sum_j a_j conj(b_j)
cplx herm_dot(const CPoint& a, const CPoint& b);
// |a|^2
double norm2(const CPoint& a);
// |a - b|^2
double dist2(const CPoint& a, const CPoint& b);
CPoint conj(const CPoint& a);

// K^t(w, z) = e^(herm_dot(w, z)/t); normalized variant k_z(w) also divides
// by sqrt(K^t(z, z)).
cplx kernel_eval(const FockParams& p, const CPoint& w, const CPoint& z,
                 bool normalized = false);

// e_m(z) = z^m / sqrt(t^|m| m!).  Direct product evaluation for |m| <= 30,
// log-magnitude/phase form beyond (keeps large degrees finite).
cplx onb_eval(const FockParams& p, const MultiIndex& m, const CPoint& z);

struct KernelCoefficients {
  std::vector<cplx> c;  // over enumerate_multiindices(n, degree)
  double tail;          // exact mass beyond the truncation degree
};

// Expansion of the normalized kernel vector k_z in the monomial basis up to
// total degree `degree`; the reported tail is the exact remaining mass
// 1 - sum |c_m|^2, evaluated through the regularized incomplete gamma
// function rather than by subtraction.
KernelCoefficients kernel_coefficients(const FockParams& p, const CPoint& z,
                                       int degree);

// Exact mass of k_z beyond total degree `degree` (Poisson-type tail).
double kernel_tail_mass(const FockParams& p, const CPoint& z, int degree);

// Smallest degree whose kernel-coefficient tail at z is <= tol.
// Throws NumericRefusal if no degree within the cap suffices.
int min_degree_for_tail(const FockParams& p, const CPoint& z, double tol);

// Values of every basis function at every node: table[i*K + k] = e_{m_i}(z_k)
// with node coordinates packed node-major (n entries per node, already
// scaled to the target measure).  Built by the degree recurrence
// e_m = e_{m - e_j} * z_j / sqrt(t m_j), which is overflow-free.
std::vector<cplx> onb_node_table(const FockParams& p,
                                 const std::vector<MultiIndex>& basis,
                                 std::span<const cplx> coords);

}  // namespace focklab

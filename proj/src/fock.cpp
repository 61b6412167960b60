#include "focklab/fock.hpp"

#include <cmath>
#include <string>
#include <unordered_map>

#include "focklab/errors.hpp"
#include "focklab/special.hpp"

namespace focklab {

void FockParams::validate() const {
  if (n < 1 || n > kMaxComplexDim)
    throw PreconditionError("n", "complex dimension must be between 1 and " +
                                     std::to_string(kMaxComplexDim));
  if (!(t > 0.0) || !std::isfinite(t))
    throw PreconditionError("t", "time parameter must be positive and finite");
}

CPoint::CPoint(std::initializer_list<cplx> zs) {
  if (zs.size() < 1 || zs.size() > kMaxComplexDim)
    throw PreconditionError("z", "point dimension must be between 1 and " +
                                     std::to_string(kMaxComplexDim));
  n = static_cast<int>(zs.size());
  int j = 0;
  for (cplx z : zs) v[j++] = z;
}

CPoint operator+(const CPoint& a, const CPoint& b) {
  CPoint r = a;
  for (int j = 0; j < a.n; ++j) r.v[j] += b.v[j];
  return r;
}

CPoint operator-(const CPoint& a, const CPoint& b) {
  CPoint r = a;
  for (int j = 0; j < a.n; ++j) r.v[j] -= b.v[j];
  return r;
}

CPoint operator*(double s, const CPoint& a) {
  CPoint r = a;
  for (int j = 0; j < a.n; ++j) r.v[j] *= s;
  return r;
}

cplx herm_dot(const CPoint& a, const CPoint& b) {
  cplx s = 0.0;
  for (int j = 0; j < a.n; ++j) s += a.v[j] * std::conj(b.v[j]);
  return s;
}

double norm2(const CPoint& a) {
  double s = 0.0;
  for (int j = 0; j < a.n; ++j) s += std::norm(a.v[j]);
  return s;
}

double dist2(const CPoint& a, const CPoint& b) {
  double s = 0.0;
  for (int j = 0; j < a.n; ++j) s += std::norm(a.v[j] - b.v[j]);
  return s;
}

CPoint conj(const CPoint& a) {
  CPoint r = a;
  for (int j = 0; j < a.n; ++j) r.v[j] = std::conj(r.v[j]);
  return r;
}

CPoint radial_point(int n, double r) {
  if (n < 1 || n > kMaxComplexDim)
    throw PreconditionError("n", "complex dimension must be between 1 and " +
                                     std::to_string(kMaxComplexDim));
  CPoint p;
  p.n = n;
  p.v[0] = r;
  return p;
}

cplx kernel_eval(const FockParams& p, const CPoint& w, const CPoint& z,
                 bool normalized) {
  p.validate();
  cplx expo = herm_dot(w, z) / p.t;
  if (normalized) expo -= norm2(z) / (2.0 * p.t);
  return std::exp(expo);
}

cplx onb_eval(const FockParams& p, const MultiIndex& m, const CPoint& z) {
  p.validate();
  if (m.order() > kMaxDegree)
    throw PreconditionError("m", "basis degree exceeds the supported cap " +
                                     std::to_string(kMaxDegree));
  if (m.order() <= 30) {
    cplx num = 1.0;
    double den = 1.0;
    for (int j = 0; j < m.n; ++j) {
      for (int k = 0; k < m.m[j]; ++k) num *= z.v[j];
      den *= special::factorial(m.m[j]);
    }
    return num / std::sqrt(std::pow(p.t, m.order()) * den);
  }
  // log-magnitude / phase form for high degrees
  double logmag = -0.5 * (m.order() * std::log(p.t) + log_multiindex_factorial(m));
  double phase = 0.0;
  for (int j = 0; j < m.n; ++j) {
    if (m.m[j] == 0) continue;
    const double r = std::abs(z.v[j]);
    if (r == 0.0) return 0.0;
    logmag += m.m[j] * std::log(r);
    phase += m.m[j] * std::arg(z.v[j]);
  }
  return std::exp(logmag) * cplx{std::cos(phase), std::sin(phase)};
}

double kernel_tail_mass(const FockParams& p, const CPoint& z, int degree) {
  p.validate();
  const double x = norm2(z) / p.t;
  if (x == 0.0) return 0.0;
  return special::lower_reg_gamma(degree + 1.0, x);
}

KernelCoefficients kernel_coefficients(const FockParams& p, const CPoint& z,
                                       int degree) {
  p.validate();
  const auto basis = enumerate_multiindices(p.n, degree);
  const double damp = std::exp(-norm2(z) / (2.0 * p.t));
  KernelCoefficients out;
  out.c.reserve(basis.size());
  const CPoint zb = conj(z);
  for (const auto& m : basis) out.c.push_back(damp * onb_eval(p, m, zb));
  out.tail = kernel_tail_mass(p, z, degree);
  return out;
}

int min_degree_for_tail(const FockParams& p, const CPoint& z, double tol) {
  if (!(tol > 0.0)) throw PreconditionError("tol", "tail tolerance must be positive");
  for (int d = 0; d <= kMaxDegree; ++d)
    if (kernel_tail_mass(p, z, d) <= tol) return d;
  throw NumericRefusal(
      "kernel-coefficient tail stays above tolerance at every supported degree",
      "|z|^2/t = " + std::to_string(norm2(z) / p.t) +
          " needs a degree beyond the cap " + std::to_string(kMaxDegree));
}

std::vector<cplx> onb_node_table(const FockParams& p,
                                 const std::vector<MultiIndex>& basis,
                                 std::span<const cplx> coords) {
  p.validate();
  const std::size_t K = coords.size() / p.n;
  std::vector<cplx> table(basis.size() * K);

  auto key = [](const MultiIndex& m) {
    return (std::uint64_t(m.m[0])) | (std::uint64_t(m.m[1]) << 16) |
           (std::uint64_t(m.m[2]) << 32);
  };
  std::unordered_map<std::uint64_t, std::size_t> pos;
  pos.reserve(basis.size());

  const double sqrt_t = std::sqrt(p.t);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const MultiIndex& m = basis[i];
    pos.emplace(key(m), i);
    cplx* row = table.data() + i * K;
    if (m.order() == 0) {
      for (std::size_t k = 0; k < K; ++k) row[k] = 1.0;
      continue;
    }
    // parent: decrement the first nonzero entry
    int j = 0;
    while (m.m[j] == 0) ++j;
    MultiIndex parent = m;
    parent.m[j] -= 1;
    const cplx* prow = table.data() + pos.at(key(parent)) * K;
    const double scale = 1.0 / (sqrt_t * std::sqrt(static_cast<double>(m.m[j])));
    for (std::size_t k = 0; k < K; ++k)
      row[k] = prow[k] * coords[k * p.n + j] * scale;
  }
  return table;
}

}  // namespace focklab

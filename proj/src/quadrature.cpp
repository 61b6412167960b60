#include "focklab/quadrature.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cfloat>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <utility>

#include "focklab/errors.hpp"
#include "focklab/simd.hpp"

namespace focklab::quad {

namespace {

enum class Family { hermite, laguerre, legendre };

// One pass of the orthonormal three-term recurrence
//   b_{k+1} p_{k+1}(x) = (x - a_k) p_k(x) - b_k p_{k-1}(x),   p_0 = 1,
// evaluated at x with periodic power-of-two rescaling: at the outer nodes
// the p_k grow like exp(x^2/2)-type envelopes and overflow long before the
// recurrence is done.  Returns the Newton correction p_N(x)/p_N'(x) and the
// Christoffel sum S = sum_{k<N} p_k(x)^2 as (mantissa, base-2 exponent).
struct RecurrencePass {
  double newton_step = 0.0;
  double ssq = 1.0;  // sum of squares, times 2^ssq_exp
  long ssq_exp = 0;
};

RecurrencePass ortho_recurrence(const Eigen::VectorXd& a,
                                const Eigen::VectorXd& b, double x) {
  const int n = static_cast<int>(a.size());
  double pm = 0.0, pc = 1.0;    // p_{k-1}, p_k
  double dpm = 0.0, dpc = 0.0;  // derivatives
  RecurrencePass out;
  for (int k = 0; k < n; ++k) {
    const double bk = (k > 0) ? b(k - 1) : 0.0;
    const double bk1 = (k < n - 1) ? b(k) : 1.0;  // p_n carries no 1/b_n
    const double pn = ((x - a(k)) * pc - bk * pm) / bk1;
    const double dpn = ((x - a(k)) * dpc + pc - bk * dpm) / bk1;
    pm = pc;
    pc = pn;
    dpm = dpc;
    dpc = dpn;
    if (k < n - 1) out.ssq += pc * pc;
    const double mag = std::max(std::fabs(pc), std::fabs(dpc));
    if (mag > 0x1p500) {
      pm = std::ldexp(pm, -512);
      pc = std::ldexp(pc, -512);
      dpm = std::ldexp(dpm, -512);
      dpc = std::ldexp(dpc, -512);
      out.ssq = std::ldexp(out.ssq, -1024);  // underflow of old terms is fine
      out.ssq_exp += 1024;
    }
  }
  out.newton_step = (dpc != 0.0) ? pc / dpc : 0.0;
  return out;
}

// Golub–Welsch nodes with Christoffel weights.  Nodes start as eigenvalues
// of the symmetric tridiagonal Jacobi matrix and are polished by Newton on
// p_N; the weight is then mu0 / sum_{k<N} p_k(x_i)^2.  Eigenvector-based
// weights would lose all accuracy at the outer nodes, where the true weight
// sits far below the eigensolver's absolute error floor; the Christoffel sum
// keeps full relative accuracy there, and weights beyond the double range
// underflow to an honest zero.
Rule1D golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& sub,
                    double mu0) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw NumericRefusal("quadrature eigensolve did not converge",
                         "requested order " + std::to_string(diag.size()));
  const int n = static_cast<int>(diag.size());
  Rule1D r;
  r.x.resize(n);
  r.w.resize(n);
  for (int i = 0; i < n; ++i) {
    double x = es.eigenvalues()(i);  // ascending
    RecurrencePass pass;
    for (int iter = 0; iter < 3; ++iter) {
      pass = ortho_recurrence(diag, sub, x);
      const double limit = 1e-3 * (1.0 + std::fabs(x));
      const double step = std::clamp(pass.newton_step, -limit, limit);
      x -= step;
      if (std::fabs(step) <= 4.0 * DBL_EPSILON * (1.0 + std::fabs(x))) {
        pass = ortho_recurrence(diag, sub, x);
        break;
      }
    }
    r.x[i] = x;
    r.w[i] = std::ldexp(mu0 / pass.ssq,
                        -static_cast<int>(std::min(pass.ssq_exp, 5000L)));
  }
  return r;
}

// Force exact +/- symmetry on rules whose weight function is even; the
// eigensolver gets there only to rounding error, and downstream parity
// cancellations are cleaner when the symmetry is exact.
void symmetrize(Rule1D& r) {
  const int n = r.order();
  for (int i = 0; i < n / 2; ++i) {
    const int j = n - 1 - i;
    const double xm = 0.5 * (r.x[i] - r.x[j]);
    r.x[i] = xm;
    r.x[j] = -xm;
    const double wm = 0.5 * (r.w[i] + r.w[j]);
    r.w[i] = wm;
    r.w[j] = wm;
  }
  if (n % 2 == 1) r.x[n / 2] = 0.0;
}

Rule1D build_rule(Family f, int order) {
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(order);
  Eigen::VectorXd sub(std::max(order - 1, 0));
  switch (f) {
    case Family::hermite:
      // weight e^{-x^2}: alpha_k = 0, beta_k = k/2
      for (int k = 1; k < order; ++k) sub(k - 1) = std::sqrt(0.5 * k);
      {
        Rule1D r = golub_welsch(diag, sub, 1.0);  // mass sqrt(pi), then /sqrt(pi)
        symmetrize(r);
        return r;
      }
    case Family::laguerre:
      // weight e^{-x}: alpha_k = 2k+1, beta_k = k^2
      for (int k = 0; k < order; ++k) diag(k) = 2.0 * k + 1.0;
      for (int k = 1; k < order; ++k) sub(k - 1) = static_cast<double>(k);
      return golub_welsch(diag, sub, 1.0);
    case Family::legendre: {
      // weight 1 on (-1, 1): alpha_k = 0, beta_k = k^2/(4k^2 - 1)
      for (int k = 1; k < order; ++k)
        sub(k - 1) = k / std::sqrt(4.0 * k * k - 1.0);
      Rule1D r = golub_welsch(diag, sub, 2.0);
      symmetrize(r);
      return r;
    }
  }
  throw std::logic_error("unreachable quadrature family");
}

const Rule1D& cached_rule(Family f, int order) {
  if (order < 1 || order > kMaxRuleOrder)
    throw PreconditionError("quad-order",
                            "quadrature order must be between 1 and " +
                                std::to_string(kMaxRuleOrder));
  static std::mutex mtx;
  static std::map<std::pair<int, int>, Rule1D> cache;
  std::scoped_lock lock(mtx);
  auto key = std::make_pair(static_cast<int>(f), order);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, build_rule(f, order)).first;
  return it->second;
}

// Fold a weighted complex sum in fixed-size blocks through the dispatched
// kernel, so the result is independent of which backend is active.
class WeightedAccumulator {
 public:
  void push(double w, cplx v) {
    w_[fill_] = w;
    v_[fill_] = v;
    if (++fill_ == kBlock) flush();
  }
  cplx total() {
    flush();
    return total_;
  }

 private:
  static constexpr std::size_t kBlock = 4096;
  void flush() {
    if (fill_ == 0) return;
    total_ += simd::weighted_sum(std::span(w_, fill_), std::span(v_, fill_));
    fill_ = 0;
  }
  double w_[kBlock];
  cplx v_[kBlock];
  std::size_t fill_ = 0;
  cplx total_ = 0.0;
};

void check_plane_params(int n, double s) {
  if (n < 1 || n > kMaxComplexDim)
    throw PreconditionError("n", "complex dimension must be between 1 and " +
                                     std::to_string(kMaxComplexDim));
  if (!(s > 0.0) || !std::isfinite(s))
    throw PreconditionError("s", "Gaussian time parameter must be positive");
}

}  // namespace

const Rule1D& gauss_hermite(int order) { return cached_rule(Family::hermite, order); }
const Rule1D& gauss_laguerre(int order) { return cached_rule(Family::laguerre, order); }
const Rule1D& gauss_legendre(int order) { return cached_rule(Family::legendre, order); }

Rule1D legendre_on(double a, double b, int order) {
  const Rule1D& base = gauss_legendre(order);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  Rule1D r;
  r.x.reserve(order);
  r.w.reserve(order);
  for (int i = 0; i < order; ++i) {
    r.x.push_back(mid + half * base.x[i]);
    r.w.push_back(half * base.w[i]);
  }
  return r;
}

Rule1D composite_legendre(double a, double b, int panels, int order) {
  if (panels < 1)
    throw PreconditionError("panels", "panel count must be at least 1");
  if (!(b > a))
    throw PreconditionError("interval", "composite rule needs b > a");
  Rule1D r;
  r.x.reserve(static_cast<std::size_t>(panels) * order);
  r.w.reserve(static_cast<std::size_t>(panels) * order);
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    Rule1D piece = legendre_on(a + p * h, a + (p + 1) * h, order);
    r.x.insert(r.x.end(), piece.x.begin(), piece.x.end());
    r.w.insert(r.w.end(), piece.w.begin(), piece.w.end());
  }
  return r;
}

Rule1D windowed_rule(double a, double b, std::vector<double> cuts, int panels,
                     int order) {
  std::vector<double> edges{a, b};
  for (double c : cuts)
    if (c > a && c < b) edges.push_back(c);
  std::sort(edges.begin(), edges.end());
  const double tol = 1e-12 * (b - a);
  edges.erase(std::unique(edges.begin(), edges.end(),
                          [&](double x, double y) { return y - x <= tol; }),
              edges.end());
  edges.back() = b;

  Rule1D out;
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    const double len = edges[i + 1] - edges[i];
    const int np =
        std::max(1, static_cast<int>(std::llround(panels * len / (b - a))));
    Rule1D piece = composite_legendre(edges[i], edges[i + 1], np, order);
    out.x.insert(out.x.end(), piece.x.begin(), piece.x.end());
    out.w.insert(out.w.end(), piece.w.begin(), piece.w.end());
  }
  return out;
}

PlaneNodes gaussian_nodes(int n, double s, int order) {
  check_plane_params(n, s);
  const int axes = 2 * n;
  double count = 1.0;
  for (int a = 0; a < axes; ++a) count *= order;
  if (count > static_cast<double>(kMaxTensorNodes))
    throw NumericRefusal(
        "tensor quadrature grid exceeds the node budget",
        "order " + std::to_string(order) + " over " + std::to_string(axes) +
            " real axes needs " + std::to_string(static_cast<long long>(count)) +
            " nodes; budget is " + std::to_string(kMaxTensorNodes));

  const Rule1D& rule = gauss_hermite(order);
  const double scale = std::sqrt(s);
  const std::size_t total = static_cast<std::size_t>(count);

  PlaneNodes out;
  out.n = n;
  out.s = s;
  out.coords.resize(total * n);
  out.w.resize(total);

  std::vector<int> idx(axes, 0);
  for (std::size_t k = 0; k < total; ++k) {
    double wk = 1.0;
    for (int j = 0; j < n; ++j) {
      const int ia = idx[2 * j], ib = idx[2 * j + 1];
      out.coords[k * n + j] = scale * cplx{rule.x[ia], rule.x[ib]};
      wk *= rule.w[ia] * rule.w[ib];
    }
    out.w[k] = wk;
    for (int a = axes - 1; a >= 0; --a) {
      if (++idx[a] < order) break;
      idx[a] = 0;
    }
  }
  return out;
}

cplx integrate_gaussian(int n, double s, int order,
                        const std::function<cplx(const CPoint&)>& G) {
  const PlaneNodes nodes = gaussian_nodes(n, s, order);
  WeightedAccumulator acc;
  CPoint z;
  z.n = n;
  for (std::size_t k = 0; k < nodes.count(); ++k) {
    for (int j = 0; j < n; ++j) z.v[j] = nodes.coords[k * n + j];
    acc.push(nodes.w[k], G(z));
  }
  return acc.total();
}

cplx integrate_radial(int n, double s, int order,
                      const std::function<cplx(double)>& g) {
  check_plane_params(n, s);
  const Rule1D& rule = gauss_laguerre(order);
  const double norm = 1.0 / std::tgamma(static_cast<double>(n));
  WeightedAccumulator acc;
  for (int i = 0; i < order; ++i) {
    const double x = rule.x[i];
    const double poly = (n == 1) ? 1.0 : std::pow(x, n - 1);
    acc.push(rule.w[i] * poly * norm, g(std::sqrt(s * x)));
  }
  return acc.total();
}

cplx integrate_plane_composite(double s, double L, int panels, int order,
                               const std::function<cplx(cplx)>& G) {
  check_plane_params(1, s);
  if (!(L > 0.0)) throw PreconditionError("extent", "box half-width must be positive");
  const Rule1D axis = composite_legendre(-L, L, panels, order);
  const std::size_t m = axis.x.size();
  if (m * m > kMaxTensorNodes)
    throw NumericRefusal("composite plane rule exceeds the node budget",
                         std::to_string(m * m) + " nodes requested; budget is " +
                             std::to_string(kMaxTensorNodes));
  const double dens = 1.0 / (std::numbers::pi * s);
  WeightedAccumulator acc;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      const double x = axis.x[i], y = axis.x[j];
      const double w = axis.w[i] * axis.w[j] * dens * std::exp(-(x * x + y * y) / s);
      acc.push(w, G(cplx{x, y}));
    }
  }
  return acc.total();
}

cplx integrate_plane_polar(double s, double rmax, int rpanels, int order,
                           int m_ang, const std::function<cplx(cplx)>& G) {
  check_plane_params(1, s);
  if (!(rmax > 0.0)) throw PreconditionError("rmax", "disc radius must be positive");
  if (m_ang < 4) throw PreconditionError("m-ang", "angular rule needs at least 4 points");
  const Rule1D radial = composite_legendre(0.0, rmax, rpanels, order);
  if (radial.x.size() * static_cast<std::size_t>(m_ang) > kMaxTensorNodes)
    throw NumericRefusal("polar plane rule exceeds the node budget",
                         "reduce rpanels, order, or m-ang");
  const double dtheta = 2.0 * std::numbers::pi / m_ang;
  const double dens = 1.0 / (std::numbers::pi * s);
  WeightedAccumulator acc;
  for (std::size_t i = 0; i < radial.x.size(); ++i) {
    const double r = radial.x[i];
    const double wr = radial.w[i] * r * std::exp(-r * r / s) * dens * dtheta;
    for (int k = 0; k < m_ang; ++k) {
      const double th = k * dtheta;
      acc.push(wr, G(r * cplx{std::cos(th), std::sin(th)}));
    }
  }
  return acc.total();
}

}  // namespace focklab::quad

#include "focklab/bounds.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "focklab/errors.hpp"
#include "focklab/quadrature.hpp"
#include "focklab/special.hpp"
#include "focklab/toeplitz.hpp"

namespace focklab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v))
    throw PreconditionError(name,
                            std::string(name) + " must be positive and finite");
}

void check_dim(int n) {
  if (n < 1 || n > kMaxComplexDim)
    throw PreconditionError("dim", "complex dimension must lie in [1, " +
                                       std::to_string(kMaxComplexDim) + "]");
}

// Radial reduction of the scan target: every supported family is either
// radial or an off-center ball, whose flow is the centered profile evaluated
// at |z - center|.
struct ScanTarget {
  Symbol symbol;       // radial symbol actually scanned
  double extra = 0.0;  // added scan extent (|center| for shifted balls)
};

ScanTarget scan_target(const Symbol& f) {
  if (f.radial()) return {f, 0.0};
  if (f.kind == SymbolKind::ball) {
    double c2 = 0.0;
    for (const cplx& c : f.center) c2 += std::norm(c);
    return {Symbol::ball(std::vector<cplx>(f.center.size(), cplx{0.0, 0.0}),
                         f.radius),
            std::sqrt(c2)};
  }
  throw PreconditionError(
      "symbol", "grid sup scan implemented for radial families and balls");
}

// Flow values on the finest radial grid 0, h, 2h, ..., <= extent.
std::vector<cplx> flow_scan(const Symbol& radial_f, double s, int n,
                            double extent, double h, const HeatOptions& opt) {
  const int m = static_cast<int>(std::floor(extent / h + 1e-9));
  std::vector<cplx> out(static_cast<std::size_t>(m) + 1);
  for (int k = 0; k <= m; ++k)
    out[static_cast<std::size_t>(k)] = heat_transform(
        radial_f, s, radial_point(n, k * h), HeatMethod::automatic, opt);
  return out;
}

}  // namespace

BoundConstants gamma_and_constant(double s, double t, int n) {
  check_positive(s, "s");
  check_positive(t, "t");
  check_dim(n);
  if (!(s < t))
    throw PreconditionError("s", "interpolation range requires s < t");
  BoundConstants b;
  b.s = s;
  b.t = t;
  b.n = n;
  b.gamma = 1.0 / (4.0 * (t - s)) - s / (2.0 * t * (t - s));
  b.c_defined = b.gamma > 0.0 && s < t / 2.0;
  b.c = b.c_defined ? std::pow(1.0 / (b.gamma * t), n) : kNaN;
  return b;
}

SupEstimate heat_sup_estimate(const Symbol& f, double s, int n, double extent,
                              double step, const HeatOptions& opt) {
  f.validate();
  check_positive(s, "s");
  check_dim(n);
  if (!(extent > 0.0) || !std::isfinite(extent))
    throw PreconditionError("grid-extent", "grid extent must be positive");
  if (!(step > 0.0) || step > extent)
    throw PreconditionError("grid-step",
                            "grid step must lie in (0, grid-extent]");

  const ScanTarget target = scan_target(f);
  const double scan_extent = extent + target.extra;
  const double h = step / 4.0;
  const std::vector<cplx> fine =
      flow_scan(target.symbol, s, n, scan_extent, h, opt);

  SupEstimate est;
  // level l uses every 4/2^l-th point of the finest scan
  for (int level = 0; level < 3; ++level) {
    const std::size_t stride = static_cast<std::size_t>(4 >> level);
    double sup = 0.0;
    for (std::size_t k = 0; k < fine.size(); k += stride)
      sup = std::max(sup, std::abs(fine[k]));
    est.levels[static_cast<std::size_t>(level)] = sup;
  }
  est.value = est.levels[2];
  const double scale = std::max(est.levels[2], 1e-300);
  est.stabilized =
      std::abs(est.levels[1] - est.levels[0]) <= 1e-3 * scale &&
      std::abs(est.levels[2] - est.levels[1]) <= 1e-3 * scale;
  return est;
}

BcBoundCheck bc_bound_check(const Symbol& f, double s, double t, int n,
                            int degree, double extent, double step) {
  check_positive(s, "s");
  check_positive(t, "t");
  if (!(s < t / 2.0))
    throw PreconditionError("s", "the norm bound holds for s < t/2");

  BcBoundCheck chk;
  chk.degree = degree;
  chk.constants = gamma_and_constant(s, t, n);
  chk.sup = heat_sup_estimate(f, s, n, extent, step);
  if (!chk.sup.stabilized)
    throw NumericRefusal(
        "grid sup of the time-s flow did not stabilize under refinement",
        "halve grid-step or enlarge grid-extent");

  const TruncatedOperator T = toeplitz_matrix(f, FockParams{n, t}, degree);
  chk.lhs_norm = operator_norm(T).norm;
  chk.rhs_bound = chk.constants.c * chk.sup.value;
  chk.margin = chk.rhs_bound - chk.lhs_norm;
  chk.ok = chk.lhs_norm <= chk.rhs_bound + 1e-12 * (1.0 + chk.rhs_bound);
  return chk;
}

namespace {

bool nonneg_symbol(const Symbol& f) {
  auto real_nonneg = [](const cplx& v) {
    return v.imag() == 0.0 && v.real() >= 0.0;
  };
  switch (f.kind) {
    case SymbolKind::constant:
      return real_nonneg(f.value);
    case SymbolKind::gaussian:
      return f.lambda.imag() == 0.0;
    case SymbolKind::ball:
      return true;
    case SymbolKind::radial_step:
      for (const cplx& v : f.values)
        if (!real_nonneg(v)) return false;
      return true;
    case SymbolKind::poly_gaussian:
      if (f.lambda.imag() != 0.0) return false;
      for (const cplx& c : f.coeffs)
        if (!real_nonneg(c)) return false;
      return true;
  }
  return false;
}

}  // namespace

SandwichCheck nonneg_sandwich_check(const Symbol& f, double t, int n,
                                    int degree, double extent, double step,
                                    double tol) {
  f.validate();
  check_positive(t, "t");
  check_dim(n);
  if (!nonneg_symbol(f))
    throw PreconditionError("symbol",
                            "signed symbols rejected: the sandwich needs "
                            "f >= 0 (certified per family)");

  SandwichCheck chk;
  chk.low = heat_sup_estimate(f, t, n, extent, step).value;
  const TruncatedOperator T = toeplitz_matrix(f, FockParams{n, t}, degree);
  chk.mid = operator_norm(T).norm;
  chk.high = std::pow(4.0, n) * chk.low;

  const ScanTarget target = scan_target(f);
  const double h = step / 4.0;
  const HeatOptions opt;
  const std::vector<cplx> full =
      flow_scan(target.symbol, t, n, extent + target.extra, h, opt);
  const std::vector<cplx> half =
      flow_scan(target.symbol, t / 2.0, n, extent + target.extra, h, opt);
  const double fac = std::pow(2.0, -n);
  double tmin = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < full.size(); ++k)
    tmin = std::min(tmin, full[k].real() - fac * half[k].real());
  chk.two_time_min = tmin;

  chk.ok = chk.low <= chk.mid + tol && chk.mid <= chk.high + tol;
  return chk;
}

std::vector<FlowNormRatio> flow_vs_norm_ratio(const Symbol& f, double t, int n,
                                              int degree,
                                              std::span<const double> s_values,
                                              double extent, double step) {
  check_positive(t, "t");
  const TruncatedOperator T = toeplitz_matrix(f, FockParams{n, t}, degree);
  const double norm = operator_norm(T).norm;
  std::vector<FlowNormRatio> out;
  out.reserve(s_values.size());
  for (double s : s_values) {
    FlowNormRatio r;
    r.s = s;
    r.flow_sup = heat_sup_estimate(f, s, n, extent, step).value;
    r.compression_norm = norm;
    r.ratio = norm > 0.0 ? r.flow_sup / norm : kNaN;
    out.push_back(r);
  }
  return out;
}

SchurDominant SchurDominant::gaussian(double a) {
  return SchurDominant{Kind::gaussian, a};
}

SchurDominant SchurDominant::power(double beta) {
  return SchurDominant{Kind::power, beta};
}

double schur_bound(const SchurDominant& H, int n, bool force_quadrature) {
  check_dim(n);
  if (H.kind == SchurDominant::Kind::gaussian) {
    if (!(H.param > 0.0))
      throw PreconditionError("dominant",
                              "Gaussian dominant needs a positive decay rate");
    if (!force_quadrature) return std::pow(H.param, -n);
    const double a = H.param;
    const double upper = std::sqrt(55.0 / a);
    const quad::Rule1D rule = quad::composite_legendre(0.0, upper, 24, 32);
    double acc = 0.0;
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
      const double r = rule.x[i];
      acc += rule.w[i] * std::pow(r, 2 * n - 1) * std::exp(-a * r * r);
    }
    return 2.0 / std::tgamma(n) * acc;
  }

  const double beta = H.param;
  if (!(beta > 2.0 * n))
    throw PreconditionError(
        "dominant", "(1+d)^(-beta) is not integrable over C^n unless "
                    "beta > 2n");
  if (!force_quadrature) {
    return 2.0 * std::exp(std::lgamma(2.0 * n) + std::lgamma(beta - 2.0 * n) -
                          std::lgamma(static_cast<double>(n)) -
                          std::lgamma(beta));
  }
  const double cutoff = 1e4;
  const quad::Rule1D rule =
      quad::windowed_rule(0.0, cutoff, {1.0, 10.0, 100.0}, 64, 32);
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    const double r = rule.x[i];
    acc += rule.w[i] * std::pow(r, 2 * n - 1) * std::pow(1.0 + r, -beta);
  }
  // asymptotic remainder of the integrand beyond the cutoff
  acc += std::pow(cutoff, 2.0 * n - beta) / (beta - 2.0 * n);
  return 2.0 / std::tgamma(n) * acc;
}

namespace {

void check_scale_index(std::int64_t k) {
  if (k < 0)
    throw PreconditionError("k", "scale index must be nonnegative");
}

}  // namespace

double c_scale(std::int64_t k) {
  check_scale_index(k);
  return static_cast<double>(k) / (2.0 * static_cast<double>(k + 1));
}

double c_scale_recursive(std::int64_t k) {
  check_scale_index(k);
  double d = 0.5;  // gap 1/2 - c_0
  for (std::int64_t i = 0; i < k; ++i) d = d / (1.0 + 2.0 * d);
  return 0.5 - d;
}

double c_scale_max_deviation(std::int64_t kmax) {
  check_scale_index(kmax);
  double d = 0.5;
  double worst = 0.0;
  for (std::int64_t k = 0; k <= kmax; ++k) {
    worst = std::max(worst, std::abs((0.5 - d) - c_scale(k)));
    d = d / (1.0 + 2.0 * d);
  }
  return worst;
}

double envelope_exponent(std::int64_t k) {
  check_scale_index(k);
  return 0.5 - c_scale(k + 1);
}

KernelTail kernel_tail(const CPoint& z, double r, int n) {
  check_dim(n);
  if (z.n != n)
    throw PreconditionError("z", "point must live in dimension n");
  if (!(r > 0.0) || !std::isfinite(r))
    throw PreconditionError("r", "tail radius must be positive and finite");
  KernelTail kt;
  kt.exact = std::sqrt(special::upper_reg_gamma(n, r * r));
  kt.bound = (std::pow(2.0, n) - 1.0) * std::exp(-r * r / (2.0 * n));
  kt.ok = kt.exact <= kt.bound * (1.0 + 1e-12);
  return kt;
}

}  // namespace focklab

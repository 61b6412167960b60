#include "focklab/heat.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <utility>
#include <vector>

#include "focklab/errors.hpp"
#include "focklab/quadrature.hpp"
#include "focklab/simd.hpp"
#include "focklab/special.hpp"

namespace focklab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
using std::numbers::pi;

void check_time(double s, const char* field) {
  if (!(s > 0.0) || !std::isfinite(s))
    throw PreconditionError(field, "time parameter must be positive and finite");
}

void check_dim(int n) {
  if (n < 1 || n > kMaxComplexDim)
    throw PreconditionError("n", "complex dimension must be between 1 and " +
                                     std::to_string(kMaxComplexDim));
}

// sum_j c_j (d/dlambda)^j [(1 - s*lambda)^{-n} exp(lambda q u)] with
// u = 1/(1 - s*lambda), evaluated by tracking monomials in u:
// differentiation maps u^k to (n + k) s u^{k+1} + q u^{k+2}.
cplx heat_poly_series(int n, double s, double q, std::span<const cplx> coeffs,
                      cplx lambda) {
  const cplx u = 1.0 / (1.0 - s * lambda);
  std::map<int, cplx> mono{{0, cplx{1.0, 0.0}}};
  cplx total = 0.0;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (j) {
      std::map<int, cplx> next;
      for (const auto& [k, c] : mono) {
        next[k + 1] += c * static_cast<double>(n + k) * s;
        next[k + 2] += c * q;
      }
      mono = std::move(next);
    }
    cplx pv = 0.0;
    for (const auto& [k, c] : mono) pv += c * std::pow(u, k);
    total += coeffs[j] * pv;
  }
  return std::pow(u, n) * std::exp(lambda * q * u) * total;
}

// sum_j c_j (d/dlambda)^j [(1 - t*lambda)^{-n} exp(c u)] with
// u = 1/(1 - t*lambda); here the exponent coefficient c is lambda-free, so
// differentiation maps u^k to (n + k) t u^{k+1} + c t u^{k+2}.
cplx pairing_poly_series(int n, double t, cplx cfac, std::span<const cplx> coeffs,
                         cplx lambda) {
  const cplx u = 1.0 / (1.0 - t * lambda);
  std::map<int, cplx> mono{{0, cplx{1.0, 0.0}}};
  cplx total = 0.0;
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (j) {
      std::map<int, cplx> next;
      for (const auto& [k, c] : mono) {
        next[k + 1] += c * static_cast<double>(n + k) * t;
        next[k + 2] += c * cfac * t;
      }
      mono = std::move(next);
    }
    cplx pv = 0.0;
    for (const auto& [k, c] : mono) pv += c * std::pow(u, k);
    total += coeffs[j] * pv;
  }
  return std::pow(u, n) * std::exp(cfac * u) * total;
}

cplx heat_closed(const Symbol& f, double s, const CPoint& z) {
  switch (f.kind) {
    case SymbolKind::constant:
      return f.value;
    case SymbolKind::gaussian: {
      const cplx u = 1.0 / (1.0 - s * f.lambda);
      return std::pow(u, z.n) * std::exp(f.lambda * norm2(z) * u);
    }
    case SymbolKind::poly_gaussian:
      return heat_poly_series(z.n, s, norm2(z), f.coeffs, f.lambda);
    default:
      throw PreconditionError("method", "no closed-form heat flow for symbol kind '" +
                                            f.kind_name() + "'");
  }
}

}  // namespace

bool heat_admissible(const Symbol& f, double s) {
  switch (f.kind) {
    case SymbolKind::gaussian:
    case SymbolKind::poly_gaussian:
      return s * f.lambda.real() < 1.0;
    default:
      return true;
  }
}

std::optional<Symbol> heat_flow_symbol(const Symbol& f, double s, int n) {
  check_time(s, "s");
  check_dim(n);
  if (!heat_admissible(f, s))
    throw NumericRefusal(
        "heat flow of this symbol diverges at the requested time",
        "Re(lambda) = " + format_double(f.lambda.real()) +
            " admits flow times below " + format_double(1.0 / f.lambda.real()));
  switch (f.kind) {
    case SymbolKind::constant:
      return f;
    case SymbolKind::gaussian: {
      const cplx u = 1.0 / (1.0 - s * f.lambda);
      return Symbol::poly_gaussian({std::pow(u, n)}, f.lambda * u);
    }
    case SymbolKind::poly_gaussian: {
      // Track monomials u^k q^m (q stands for |z|^2) through the derivative
      // recursion, then fold the u powers into numeric coefficients.
      using Key = std::pair<int, int>;
      std::map<Key, cplx> total;
      std::map<Key, cplx> mono{{{0, 0}, cplx{1.0, 0.0}}};
      for (std::size_t j = 0; j < f.coeffs.size(); ++j) {
        if (j) {
          std::map<Key, cplx> next;
          for (const auto& [km, c] : mono) {
            const auto [k, m] = km;
            next[{k + 1, m}] += c * static_cast<double>(n + k) * s;
            next[{k + 2, m + 1}] += c;
          }
          mono = std::move(next);
        }
        for (const auto& [km, c] : mono) total[km] += f.coeffs[j] * c;
      }
      const cplx u = 1.0 / (1.0 - s * f.lambda);
      const cplx amp = std::pow(u, n);
      int deg = 0;
      for (const auto& kv : total) deg = std::max(deg, kv.first.second);
      std::vector<cplx> out(deg + 1, cplx{0.0, 0.0});
      for (const auto& [km, c] : total) out[km.second] += amp * c * std::pow(u, km.first);
      return Symbol::poly_gaussian(std::move(out), f.lambda * u);
    }
    default:
      return std::nullopt;
  }
}

cplx heat_radial(int n, double s, const std::function<cplx(double)>& profile,
                 double rho, std::span<const double> breakpoints,
                 double support_radius, const HeatOptions& opt) {
  check_dim(n);
  check_time(s, "s");
  if (!(rho >= 0.0) || !std::isfinite(rho))
    throw PreconditionError("rho", "evaluation radius must be finite and nonnegative");

  const double W = opt.window * std::sqrt(s);
  const bool origin = rho * rho < 1e-12 * s;
  double a = origin ? 0.0 : std::max(0.0, rho - W);
  double b = origin ? W : rho + W;
  if (std::isfinite(support_radius)) {
    if (support_radius <= 0.0) return 0.0;
    b = std::min(b, support_radius);
    if (b <= a) {  // support ends below the window; keep its closest slab
      b = support_radius;
      a = std::max(0.0, b - W);
    }
  }

  std::vector<double> cuts(breakpoints.begin(), breakpoints.end());
  if (!origin) cuts.push_back(rho);
  const quad::Rule1D rule =
      quad::windowed_rule(a, b, std::move(cuts), opt.radial_panels, opt.radial_order);

  std::vector<double> wts(rule.x.size());
  std::vector<cplx> vals(rule.x.size());
  if (origin) {
    const double norm = 2.0 / (std::tgamma(static_cast<double>(n)) * std::pow(s, n));
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
      const double r = rule.x[i];
      wts[i] = rule.w[i] * norm * std::pow(r, 2 * n - 1) * std::exp(-r * r / s);
      vals[i] = profile(r);
    }
  } else {
    const double pref = (2.0 / s) * std::pow(rho, 1 - n);
    for (std::size_t i = 0; i < rule.x.size(); ++i) {
      const double r = rule.x[i];
      const double d = r - rho;
      wts[i] = rule.w[i] * pref * std::pow(r, n) * std::exp(-d * d / s) *
               special::scaled_bessel_i(n - 1, 2.0 * r * rho / s);
      vals[i] = profile(r);
    }
  }
  return simd::weighted_sum(wts, vals);
}

cplx heat_transform(const Symbol& f, double s, const CPoint& z,
                    HeatMethod method, const HeatOptions& opt) {
  f.validate();
  check_time(s, "s");
  check_dim(z.n);
  if (!heat_admissible(f, s))
    throw NumericRefusal(
        "heat flow of this symbol diverges at the requested time",
        "Re(lambda) = " + format_double(f.lambda.real()) +
            " admits flow times below " + format_double(1.0 / f.lambda.real()));

  if (method == HeatMethod::automatic) {
    switch (f.kind) {
      case SymbolKind::constant:
      case SymbolKind::gaussian:
      case SymbolKind::poly_gaussian:
        method = HeatMethod::closed_form;
        break;
      default:
        method = HeatMethod::radial;
        break;
    }
  }

  switch (method) {
    case HeatMethod::closed_form:
      return heat_closed(f, s, z);
    case HeatMethod::radial: {
      if (f.kind == SymbolKind::ball && !f.radial()) {
        // An off-center indicator is a translate of a centered one.
        if (f.center.size() != static_cast<std::size_t>(z.n))
          throw PreconditionError("symbol",
                                  "ball center dimension does not match the point");
        if (std::isinf(f.radius)) return 1.0;
        CPoint shifted = z;
        for (int j = 0; j < z.n; ++j) shifted.v[j] -= f.center[j];
        const double R = f.radius;
        return heat_radial(
            z.n, s, [R](double r) { return cplx{r <= R ? 1.0 : 0.0, 0.0}; },
            std::sqrt(norm2(shifted)), {}, R, opt);
      }
      if (!f.radial())
        throw PreconditionError("method", "radial evaluation needs a radial symbol");
      const auto bp = f.radial_breakpoints();
      return heat_radial(
          z.n, s, [&f](double r) { return f.radial_value(r); },
          std::sqrt(norm2(z)), bp, f.support_radius(), opt);
    }
    case HeatMethod::tensor:
      return quad::integrate_gaussian(
          z.n, s, opt.tensor_order,
          [&](const CPoint& u) { return f.eval(z - u); });
    case HeatMethod::automatic:
      break;
  }
  throw std::logic_error("unreachable heat method");
}

cplx berezin_transform(const FockParams& p, const Symbol& f, const CPoint& z,
                       HeatMethod method, const HeatOptions& opt) {
  p.validate();
  if (z.n != p.n)
    throw PreconditionError("z", "evaluation point must live in dimension n");
  return heat_transform(f, p.t, z, method, opt);
}

double semigroup_residual(const Symbol& f, double s1, double s2,
                          const CPoint& z, const HeatOptions& opt,
                          bool force_quadrature) {
  check_time(s1, "s1");
  check_time(s2, "s2");
  const cplx direct = heat_transform(f, s1 + s2, z, HeatMethod::automatic, opt);
  if (!force_quadrature) {
    if (auto flowed = heat_flow_symbol(f, s1, z.n)) {
      const cplx iterated =
          heat_transform(*flowed, s2, z, HeatMethod::automatic, opt);
      return std::abs(direct - iterated);
    }
  }
  const HeatMethod inner =
      f.radial() ? HeatMethod::radial : HeatMethod::tensor;
  cplx iterated;
  if (f.radial()) {
    iterated = heat_radial(
        z.n, s2,
        [&](double r) {
          return heat_transform(f, s1, radial_point(z.n, r), inner, opt);
        },
        std::sqrt(norm2(z)), {}, kInf, opt);
  } else {
    iterated = quad::integrate_gaussian(
        z.n, s2, opt.tensor_order, [&](const CPoint& u) {
          return heat_transform(f, s1, z - u, inner, opt);
        });
  }
  return std::abs(direct - iterated);
}

namespace {

// integral over C of h(|u|) E(u) dmu_t(u) with
//   E(u) = exp((u conj(w) + z conj(u))/t)        in plain mode,
//   E(u) = exp(Re(u conj(w) + z conj(u))/t)      in modulus mode (h -> |h|).
// Polar evaluation: panel-split Legendre in the radius (peak of the radial
// envelope and every jump land on panel edges) crossed with a trapezoid in
// the angle sized to the oscillation r(|w| + |z|)/t.
cplx radial_pairing_core(double t, const std::function<cplx(double)>& h,
                         std::span<const double> breakpoints, double support,
                         const CPoint& w, const CPoint& z, bool modulus,
                         const PairingOptions& opt) {
  const double aw = std::abs(w.v[0]);
  const double az = std::abs(z.v[0]);
  const double peak = 0.5 * (aw + az);
  double b = peak + opt.window * std::sqrt(t);
  if (std::isfinite(support)) {
    if (support <= 0.0) return 0.0;
    b = std::min(b, support);
  }
  if (b <= 0.0) return 0.0;

  std::vector<double> cuts(breakpoints.begin(), breakpoints.end());
  cuts.push_back(peak);
  const quad::Rule1D rule =
      quad::windowed_rule(0.0, b, std::move(cuts), opt.radial_panels, opt.radial_order);

  const cplx wbar = std::conj(w.v[0]);
  const cplx zval = z.v[0];
  cplx total = 0.0;
  for (std::size_t i = 0; i < rule.x.size(); ++i) {
    const double r = rule.x[i];
    int M = std::max(opt.min_angular,
                     static_cast<int>(std::ceil(2.5 * r * (aw + az) / t)));
    if (M % 2) ++M;
    cplx mean = 0.0;
    for (int k = 0; k < M; ++k) {
      const double th = 2.0 * pi * k / M;
      const cplx u = r * cplx{std::cos(th), std::sin(th)};
      const cplx e = (u * wbar + zval * std::conj(u)) / t;
      mean += modulus ? cplx{std::exp(e.real()), 0.0} : std::exp(e);
    }
    mean /= static_cast<double>(M);
    const cplx hv = h(r);
    total += rule.w[i] * (2.0 / t) * r * std::exp(-r * r / t) *
             (modulus ? cplx{std::abs(hv), 0.0} : hv) * mean;
  }
  return total;
}

double pairing_normalizer(double t, const CPoint& w, const CPoint& z) {
  return std::exp(-(norm2(w) + norm2(z)) / (2.0 * t));
}

void check_pairing_points(const FockParams& p, const CPoint& w, const CPoint& z) {
  if (w.n != p.n || z.n != p.n)
    throw PreconditionError("z", "pairing points must live in dimension n");
}

}  // namespace

cplx kernel_pairing(const FockParams& p, const Symbol& f, const CPoint& w,
                    const CPoint& z, const PairingOptions& opt) {
  p.validate();
  f.validate();
  check_pairing_points(p, w, z);
  const double t = p.t;
  const double nf = pairing_normalizer(t, w, z);

  switch (f.kind) {
    case SymbolKind::constant:
      return f.value * std::exp(herm_dot(z, w) / t) * nf;
    case SymbolKind::gaussian:
    case SymbolKind::poly_gaussian: {
      if (!(f.lambda.real() * t < 1.0))
        throw NumericRefusal(
            "kernel pairing of this symbol diverges",
            "needs Re(lambda) < 1/t = " + format_double(1.0 / t));
      const std::vector<cplx> coeffs =
          f.kind == SymbolKind::gaussian ? std::vector<cplx>{cplx{1.0, 0.0}}
                                         : f.coeffs;
      return pairing_poly_series(p.n, t, herm_dot(z, w) / t, coeffs, f.lambda) * nf;
    }
    default: {
      if (f.radial() && p.n == 1)
        return radial_pairing_core(
                   t, [&f](double r) { return f.radial_value(r); },
                   f.radial_breakpoints(), f.support_radius(), w, z, false, opt) *
               nf;
      return quad::integrate_gaussian(
                 p.n, t, opt.tensor_order,
                 [&](const CPoint& u) {
                   return f.eval(u) *
                          std::exp((herm_dot(u, w) + herm_dot(z, u)) / t);
                 }) *
             nf;
    }
  }
}

cplx kernel_pairing_radial(const FockParams& p,
                           const std::function<cplx(double)>& h,
                           std::span<const double> breakpoints,
                           double support_radius, const CPoint& w,
                           const CPoint& z, const PairingOptions& opt) {
  p.validate();
  if (p.n != 1)
    throw PreconditionError("n", "the profile pairing is implemented for n = 1");
  check_pairing_points(p, w, z);
  return radial_pairing_core(p.t, h, breakpoints, support_radius, w, z, false, opt) *
         pairing_normalizer(p.t, w, z);
}

OffdiagIdentity check_offdiag_identity(const FockParams& p, const Symbol& f,
                                       double s, const CPoint& w,
                                       const CPoint& z,
                                       const PairingOptions& opt) {
  p.validate();
  if (!(s >= 0.0) || !(s < p.t))
    throw PreconditionError("s", "the interpolation identity needs 0 <= s < t");

  OffdiagIdentity out;
  out.lhs = kernel_pairing(p, f, w, z, opt);
  if (s == 0.0) {
    out.rhs = out.lhs;
    out.residual = 0.0;
    return out;
  }

  const double t = p.t;
  const double fac = s / (t * (t - s));
  const cplx pre =
      std::exp(cplx{0.5 * fac * dist2(w, z), -fac * herm_dot(z, w).imag()});

  const FockParams inner_p{p.n, t - s};
  cplx inner;
  if (auto flowed = heat_flow_symbol(f, s, p.n)) {
    inner = kernel_pairing(inner_p, *flowed, w, z, opt);
  } else {
    if (!f.radial() || p.n != 1)
      throw PreconditionError("symbol",
                              "the identity check for jump symbols is implemented "
                              "for radial symbols in dimension 1");
    HeatOptions hopt;
    hopt.radial_order = opt.radial_order;
    hopt.radial_panels = opt.radial_panels;
    hopt.window = opt.window;
    auto profile = [&](double r) {
      return heat_transform(f, s, radial_point(1, r), HeatMethod::radial, hopt);
    };
    inner = kernel_pairing_radial(inner_p, profile, {}, kInf, w, z, opt);
  }
  out.rhs = pre * inner;
  out.residual = std::abs(out.lhs - out.rhs);
  return out;
}

OffdiagBound check_offdiag_bound(const FockParams& p, const Symbol& g,
                                 const CPoint& w, const CPoint& z,
                                 const PairingOptions& opt) {
  p.validate();
  g.validate();
  check_pairing_points(p, w, z);
  const double sup = g.sup_abs();
  if (!std::isfinite(sup))
    throw NumericRefusal("the off-diagonal bound needs a bounded symbol",
                         "sup |g| is infinite for " + g.describe());

  OffdiagBound out;
  out.value = std::abs(kernel_pairing(p, g, w, z, opt));

  const double t = p.t;
  const double nf = pairing_normalizer(t, w, z);
  switch (g.kind) {
    case SymbolKind::constant:
      out.majorant = std::abs(g.value) * std::exp(norm2(w + z) / (4.0 * t)) * nf;
      break;
    case SymbolKind::gaussian: {
      const double a = g.lambda.real();  // a <= 0 since sup is finite
      out.majorant = std::pow(1.0 - a * t, -p.n) *
                     std::exp(norm2(w + z) / (4.0 * t * (1.0 - a * t))) * nf;
      break;
    }
    default: {
      if (g.radial() && p.n == 1) {
        out.majorant =
            radial_pairing_core(t, [&g](double r) { return g.radial_value(r); },
                                g.radial_breakpoints(), g.support_radius(), w, z,
                                true, opt)
                .real() *
            nf;
      } else {
        const CPoint v = w + z;
        out.majorant = quad::integrate_gaussian(
                           p.n, t, opt.tensor_order,
                           [&](const CPoint& u) {
                             return cplx{std::abs(g.eval(u)) *
                                             std::exp(herm_dot(u, v).real() / t),
                                         0.0};
                           })
                           .real() *
                       nf;
      }
      break;
    }
  }

  out.bound = sup * std::exp(-dist2(w, z) / (4.0 * t));
  const double slack = 1e-9 * (1.0 + out.bound);
  out.ok = out.value <= out.majorant + slack && out.majorant <= out.bound + slack;
  return out;
}

double mean_oscillation(const FockParams& p, const std::function<cplx(cplx)>& f,
                        cplx z, const MeanOscOptions& opt) {
  p.validate();
  if (p.n != 1)
    throw PreconditionError("n", "mean oscillation is implemented for n = 1");
  const double L = opt.extent_mult * std::sqrt(p.t);
  const cplx avg = quad::integrate_plane_composite(
      p.t, L, opt.panels, opt.order, [&](cplx w) { return f(z - w); });
  const cplx mo = quad::integrate_plane_composite(
      p.t, L, opt.panels, opt.order,
      [&](cplx w) { return cplx{std::abs(f(z - w) - avg), 0.0}; });
  return mo.real();
}

double bmo_seminorm(const FockParams& p, const std::function<cplx(cplx)>& f,
                    const PlaneGrid& grid, const MeanOscOptions& opt) {
  grid.validate();
  double best = 0.0;
  for (cplx z : grid.points())
    best = std::max(best, mean_oscillation(p, f, z, opt));
  return best;
}

}  // namespace focklab

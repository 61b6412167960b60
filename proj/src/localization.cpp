#include "focklab/localization.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "focklab/errors.hpp"
#include "focklab/quadrature.hpp"
#include "focklab/special.hpp"

namespace focklab {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::vector<CPoint> sample_directions(int n, int directions) {
  std::vector<CPoint> out;
  if (n == 1) {
    for (int k = 0; k < directions; ++k) {
      const double th = kTwoPi * k / directions;
      out.push_back(CPoint{cplx{std::cos(th), std::sin(th)}});
    }
    return out;
  }
  // four phases on each coordinate axis
  static const cplx phases[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0},
                                 {0.0, -1.0}};
  for (int j = 0; j < n; ++j)
    for (const cplx& ph : phases) {
      CPoint u;
      u.n = n;
      u.v[static_cast<std::size_t>(j)] = ph;
      out.push_back(u);
    }
  return out;
}

// Least-squares fit of log peaks against log(1+d); returns false when fewer
// than two distinct abscissae carry positive samples.
bool fit_power_envelope(const std::vector<double>& d,
                        const std::vector<double>& peaks, double& c_out,
                        double& beta_out) {
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::size_t m = 0;
  double xmin = 0.0, xmax = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const double p = std::max(peaks[i], 1e-300);
    if (peaks[i] <= 0.0) continue;
    const double x = std::log1p(d[i]);
    const double y = std::log(p);
    if (m == 0) {
      xmin = xmax = x;
    } else {
      xmin = std::min(xmin, x);
      xmax = std::max(xmax, x);
    }
    ++m;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  if (m < 2 || xmax - xmin < 1e-12) return false;
  const double mm = static_cast<double>(m);
  const double denom = mm * sxx - sx * sx;
  const double slope = (mm * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / mm;
  beta_out = -slope;
  c_out = std::exp(intercept);
  return true;
}

}  // namespace

LocalizationProfile localization_profile(const TruncatedOperator& T,
                                         const RadialGrid& grid,
                                         double tail_radius,
                                         const LocalizationOptions& opt) {
  grid.validate();
  if (!(tail_radius >= 0.0))
    throw PreconditionError("r", "tail radius must be nonnegative");
  if (opt.base_radii.empty())
    throw PreconditionError("base", "at least one base radius is required");
  if (opt.directions < 1)
    throw PreconditionError("directions", "need at least one direction");
  const int n = T.params.n;

  const std::vector<double> seps = grid.radii();
  double base_max = 0.0;
  for (double rb : opt.base_radii) {
    if (!(rb >= 0.0))
      throw PreconditionError("base", "base radii must be nonnegative");
    base_max = std::max(base_max, rb);
  }
  const double far = base_max + (seps.empty() ? 0.0 : seps.back());
  const double far_tail = std::sqrt(
      kernel_tail_mass(T.params, radial_point(n, far), T.degree));
  if (far_tail > opt.tail_tol) {
    std::string hint;
    try {
      hint = "degree >= " +
             std::to_string(min_degree_for_tail(T.params, radial_point(n, far),
                                                opt.tail_tol * opt.tail_tol)) +
             " covers the farthest sample";
    } catch (const NumericRefusal&) {
      hint = "no supported degree covers the farthest sample; shrink the grid";
    }
    throw NumericRefusal("kernel coefficient tail " + std::to_string(far_tail) +
                             " at the farthest sample exceeds the tolerance",
                         hint);
  }

  LocalizationProfile prof;
  prof.separations = seps;
  prof.tail_radius = tail_radius;
  prof.grid_extent = grid.extent;
  prof.grid_step = grid.step;
  prof.base_radii = opt.base_radii;
  prof.directions = opt.directions;

  const std::vector<CPoint> dirs = sample_directions(n, opt.directions);
  std::vector<CPoint> bases;
  for (double rb : opt.base_radii) bases.push_back(radial_point(n, rb));

  // image vectors M c(z) per base so each sample is a single dot product
  std::vector<Eigen::VectorXcd> images;
  for (const CPoint& z : bases) {
    const KernelCoefficients cz = kernel_coefficients(T.params, z, T.degree);
    Eigen::Map<const Eigen::VectorXcd> vz(cz.c.data(),
                                          static_cast<Eigen::Index>(cz.c.size()));
    images.emplace_back(T.entries * vz);
  }
  auto pair_value = [&](std::size_t b, const CPoint& w) {
    const KernelCoefficients cw = kernel_coefficients(T.params, w, T.degree);
    Eigen::Map<const Eigen::VectorXcd> vw(cw.c.data(),
                                          static_cast<Eigen::Index>(cw.c.size()));
    return vw.dot(images[b]);
  };

  prof.peaks.reserve(seps.size());
  for (double d : seps) {
    double peak = 0.0;
    for (std::size_t b = 0; b < bases.size(); ++b)
      for (const CPoint& u : dirs)
        peak = std::max(peak, std::abs(pair_value(b, bases[b] + d * u)));
    prof.peaks.push_back(peak);
  }

  prof.fit_valid =
      fit_power_envelope(prof.separations, prof.peaks, prof.fit_c,
                         prof.fit_beta);

  if (n == 1) {
    prof.weak_computed = true;
    const quad::Rule1D rule = quad::windowed_rule(
        0.0, opt.weak_extent, {tail_radius}, opt.weak_panels, opt.weak_order);
    for (std::size_t b = 0; b < bases.size(); ++b) {
      double full = 0.0, tail = 0.0;
      for (std::size_t i = 0; i < rule.x.size(); ++i) {
        const double rho = rule.x[i];
        double ang = 0.0;
        for (int k = 0; k < opt.weak_angular; ++k) {
          const double th = kTwoPi * k / opt.weak_angular;
          const CPoint w =
              bases[b] + CPoint{rho * cplx{std::cos(th), std::sin(th)}};
          ang += std::abs(pair_value(b, w));
        }
        const double shell =
            rule.w[i] * rho * ang * (kTwoPi / opt.weak_angular);
        full += shell;
        if (rho > tail_radius) tail += shell;
      }
      prof.weak_sup = std::max(prof.weak_sup, full);
      prof.weak_tail = std::max(prof.weak_tail, tail);
    }
  }
  return prof;
}

namespace {

void check_band(const BandKernelOperator& B, const CPoint& z,
                const CPoint& w) {
  if (z.n != 1 || w.n != 1)
    throw PreconditionError("z", "band kernels are implemented over C (n=1)");
  if (!(B.omega >= 0.0) || !std::isfinite(B.omega))
    throw PreconditionError("omega", "band width must be finite and >= 0");
  if (!(B.psi_support > 0.0))
    throw PreconditionError("psi", "psi support radius must be positive");
  if (!B.psi) throw PreconditionError("psi", "psi evaluator missing");
  if (B.omega > 0.0 && !B.phi)
    throw PreconditionError("phi", "phi evaluator missing");
}

int even_at_least(int floor_value, double target) {
  int m = std::max(floor_value, static_cast<int>(std::ceil(target)));
  if (m % 2) ++m;
  return m;
}

}  // namespace

cplx band_pairing(const BandKernelOperator& B, const CPoint& z,
                  const CPoint& w, const BandPairingOptions& opt) {
  check_band(B, z, w);
  const cplx zz = z.v[0];
  const cplx ww = w.v[0];
  const double az = std::abs(zz), aw = std::abs(ww);
  const double peak = 0.5 * (az + aw) + 0.5 * B.omega;

  double b = peak + opt.window;
  if (std::isfinite(B.psi_support)) b = std::min(b, B.psi_support);
  if (b <= 0.0) return 0.0;

  std::vector<double> cuts = B.psi_cuts;
  cuts.push_back(peak);
  const quad::Rule1D outer =
      quad::windowed_rule(0.0, b, cuts, opt.outer_panels, opt.outer_order);

  const double nz = 0.5 * std::norm(zz);  // |z|^2/2
  const double nw = 0.5 * std::norm(ww);

  auto kz = [&](cplx v) { return std::exp(v * std::conj(zz) - nz); };
  auto kw_bar = [&](cplx u) { return std::exp(std::conj(u) * ww - nw); };

  const quad::Rule1D ir =
      B.omega > 0.0 ? quad::composite_legendre(0.0, B.omega, opt.inner_panels,
                                               opt.inner_order)
                    : quad::Rule1D{};

  // inner integral of the band factor around v, against the measure in u
  auto inner_integral = [&](cplx v) -> cplx {
    cplx acc = 0.0;
    for (std::size_t i = 0; i < ir.x.size(); ++i) {
      const double r = ir.x[i];
      const int m = even_at_least(
          opt.inner_angular, 3.0 * B.omega * (aw + std::abs(v) + B.omega));
      cplx ang = 0.0;
      for (int k = 0; k < m; ++k) {
        const double th = kTwoPi * k / m;
        const cplx x = r * cplx{std::cos(th), std::sin(th)};
        const cplx u = v + x;
        ang += B.phi(x) * kw_bar(u) * std::exp(-std::norm(u));
      }
      acc += ir.w[i] * r * ang * (kTwoPi / m);
    }
    return acc / std::numbers::pi;
  };

  cplx total = 0.0;
  for (std::size_t i = 0; i < outer.x.size(); ++i) {
    const double rho = outer.x[i];
    const int m =
        even_at_least(opt.outer_angular, 3.0 * rho * (az + aw + B.omega));
    cplx ang = 0.0;
    for (int k = 0; k < m; ++k) {
      const double th = kTwoPi * k / m;
      const cplx v = rho * cplx{std::cos(th), std::sin(th)};
      const cplx psi_v = B.psi(v);
      if (psi_v == cplx{0.0, 0.0}) continue;
      if (B.omega == 0.0) {
        ang += psi_v * kz(v) * kw_bar(v) * std::exp(-std::norm(v));
      } else {
        ang += psi_v * kz(v) * inner_integral(v) * std::exp(-std::norm(v));
      }
    }
    total += outer.w[i] * rho * ang * (kTwoPi / m);
  }
  return total / std::numbers::pi;
}

PbdopProfile pbdop_compression_profile(const BandKernelOperator& B,
                                       const RadialGrid& grid,
                                       const BandPairingOptions& opt,
                                       const LocalizationOptions& lopt) {
  grid.validate();
  check_band(B, radial_point(1, 0.0), radial_point(1, 0.0));
  if (lopt.base_radii.empty())
    throw PreconditionError("base", "at least one base radius is required");

  const std::vector<double> seps = grid.radii();
  const std::vector<CPoint> dirs = sample_directions(1, lopt.directions);
  std::vector<CPoint> bases;
  for (double rb : lopt.base_radii) bases.push_back(radial_point(1, rb));

  // pair count x outer nodes x inner nodes budget guard
  const double pairs =
      static_cast<double>(seps.size()) * bases.size() * dirs.size();
  const double outer_nodes = static_cast<double>(opt.outer_panels) *
                             opt.outer_order * opt.outer_angular;
  const double inner_nodes =
      B.omega > 0.0 ? static_cast<double>(opt.inner_panels) * opt.inner_order *
                          opt.inner_angular
                    : 1.0;
  if (pairs * outer_nodes * inner_nodes > 3e9)
    throw NumericRefusal("band compression budget exceeded",
                         "shrink the separation grid or the rule orders");

  PbdopProfile out;
  out.profile.separations = seps;
  out.profile.tail_radius = 0.0;
  out.profile.grid_extent = grid.extent;
  out.profile.grid_step = grid.step;
  out.profile.base_radii = lopt.base_radii;
  out.profile.directions = lopt.directions;

  for (double d : seps) {
    double peak = 0.0;
    for (const CPoint& z : bases)
      for (const CPoint& u : dirs)
        peak = std::max(peak, std::abs(band_pairing(B, z, z + d * u, opt)));
    out.profile.peaks.push_back(peak);
  }
  out.profile.fit_valid =
      fit_power_envelope(out.profile.separations, out.profile.peaks,
                         out.profile.fit_c, out.profile.fit_beta);

  out.short_range_bound =
      B.psi_sup *
      (B.omega == 0.0
           ? 1.0
           : B.phi_sup * special::lower_reg_gamma(1.0, B.omega * B.omega));

  bool first_long = true;
  out.envelope_ok = true;
  out.short_range_ok = true;
  for (std::size_t i = 0; i < seps.size(); ++i) {
    const double d = seps[i];
    const double p = out.profile.peaks[i];
    if (d > 3.0 * B.omega) {
      const double ratio = p * std::exp(d * d / 18.0);
      if (first_long) {
        out.envelope_scale = ratio;
        first_long = false;
      } else if (ratio > out.envelope_scale * 1.10 + 1e-300) {
        out.envelope_ok = false;
      }
    } else if (p > out.short_range_bound * (1.0 + 1e-9) + 1e-12) {
      out.short_range_ok = false;
    }
  }
  return out;
}

}  // namespace focklab

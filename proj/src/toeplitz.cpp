#include "focklab/toeplitz.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "focklab/errors.hpp"
#include "focklab/quadrature.hpp"
#include "focklab/simd.hpp"
#include "focklab/special.hpp"

namespace focklab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kEntryBudget = 20'000'000;  // basis size x node count

void check_degree(int degree) {
  if (degree < 0 || degree > kMaxDegree)
    throw PreconditionError("degree", "truncation degree must lie in [0, " +
                                          std::to_string(kMaxDegree) + "]");
}

// Highest power of the 1-D moment variable a Laguerre-type diagonal build
// has to integrate exactly: x^{q+n-1} (plus the polynomial degree for the
// poly-Gaussian family).
int moment_power(const Symbol& f, const FockParams& p, int max_total_degree) {
  int extra = 0;
  if (f.kind == SymbolKind::poly_gaussian)
    extra = static_cast<int>(f.coeffs.size()) - 1;
  return max_total_degree + p.n - 1 + extra;
}

// Diagonal values through 1-D quadrature.  The Gaussian family absorbs the
// modified exponential into the integration variable (y = (1 - lambda t) x),
// leaving a pure power moment that Gauss-Laguerre integrates exactly; this
// evaluates the analytically continued diagonal for every lambda with
// 1 - t lambda != 0.  Piecewise families use windowed Legendre panels with
// the explicit weight x^{q+n-1} e^{-x}.
std::vector<cplx> diagonal_by_quadrature(const Symbol& f, const FockParams& p,
                                         int max_total_degree, int order) {
  const int power = moment_power(f, p, max_total_degree);
  std::vector<cplx> diag(static_cast<std::size_t>(max_total_degree) + 1);

  switch (f.kind) {
    case SymbolKind::constant:
    case SymbolKind::gaussian:
    case SymbolKind::poly_gaussian: {
      if (order == 0) order = std::max(40, power / 2 + 6);
      if (2 * order - 1 < power)
        throw NumericRefusal(
            "quadrature order " + std::to_string(order) +
                " cannot integrate the degree-" + std::to_string(power) +
                " moment exactly",
            "use quad order >= " + std::to_string(power / 2 + 1));
      const quad::Rule1D& rule = quad::gauss_laguerre(order);

      const cplx lam = f.kind == SymbolKind::constant ? cplx{0.0, 0.0}
                                                      : f.lambda;
      const cplx scale = 1.0 - lam * p.t;
      if (std::abs(scale) < 1e-14)
        throw PreconditionError(
            "lambda", "1 - t*lambda = 0: the diagonal family has a pole");
      std::vector<cplx> cs;
      if (f.kind == SymbolKind::constant)
        cs = {f.value};
      else if (f.kind == SymbolKind::gaussian)
        cs = {cplx{1.0, 0.0}};
      else
        cs = f.coeffs;

      for (int q = 0; q <= max_total_degree; ++q) {
        const int qp = q + p.n;
        const double lg = special::log_factorial(qp - 1);  // log Gamma(q+n)
        cplx d = 0.0;
        for (std::size_t j = 0; j < cs.size(); ++j) {
          double moment = 0.0;  // integral of y^{qp+j-1} e^{-y} / Gamma(qp)
          const double k = qp + static_cast<double>(j) - 1.0;
          for (std::size_t i = 0; i < rule.x.size(); ++i)
            moment += rule.w[i] * std::exp(k * std::log(rule.x[i]) - lg);
          d += cs[j] * std::pow(p.t, static_cast<double>(j)) *
               std::pow(scale, -(qp + static_cast<double>(j))) * moment;
        }
        diag[static_cast<std::size_t>(q)] = d;
      }
      return diag;
    }
    case SymbolKind::radial_step:
    case SymbolKind::ball: {
      if (order == 0) order = 40;
      if (order < 20)
        throw NumericRefusal(
            "radial panel order " + std::to_string(order) +
                " is below the exactness floor for piecewise diagonals",
            "use quad order >= 20");
      std::vector<double> cuts;
      for (double r : f.radial_breakpoints()) cuts.push_back(r * r / p.t);
      const double support = f.support_radius();
      const double xsup =
          std::isfinite(support) ? support * support / p.t : kInf;

      for (int q = 0; q <= max_total_degree; ++q) {
        const int qp = q + p.n;
        const double lg = special::log_factorial(qp - 1);
        // window where x^{qp-1} e^{-x} carries mass
        const double peak = qp - 1.0;
        const double width = 12.0 * std::sqrt(static_cast<double>(qp)) + 30.0;
        double lo = std::max(0.0, peak - width);
        double hi = std::min(peak + width, xsup);
        if (lo > 0.0 && !cuts.empty()) lo = std::min(lo, cuts.front());
        if (hi <= lo) {
          diag[static_cast<std::size_t>(q)] = 0.0;
          continue;
        }
        quad::Rule1D rule = quad::windowed_rule(lo, hi, cuts, 16, order);
        cplx d = 0.0;
        for (std::size_t i = 0; i < rule.x.size(); ++i) {
          const double x = rule.x[i];
          const cplx fv = f.radial_value(std::sqrt(p.t * x));
          if (fv == cplx{0.0, 0.0}) continue;
          d += rule.w[i] * fv * std::exp((qp - 1.0) * std::log(x) - x - lg);
        }
        diag[static_cast<std::size_t>(q)] = d;
      }
      return diag;
    }
  }
  throw std::logic_error("unreachable symbol kind");
}

std::vector<cplx> diagonal_closed(const Symbol& f, const FockParams& p,
                                  int max_total_degree) {
  std::vector<cplx> diag(static_cast<std::size_t>(max_total_degree) + 1);
  switch (f.kind) {
    case SymbolKind::constant:
      std::fill(diag.begin(), diag.end(), f.value);
      return diag;
    case SymbolKind::gaussian:
    case SymbolKind::poly_gaussian: {
      const cplx scale = 1.0 - f.lambda * p.t;
      if (std::abs(scale) < 1e-14)
        throw PreconditionError(
            "lambda", "1 - t*lambda = 0: the diagonal family has a pole");
      const std::vector<cplx> cs = f.kind == SymbolKind::gaussian
                                       ? std::vector<cplx>{cplx{1.0, 0.0}}
                                       : f.coeffs;
      for (int q = 0; q <= max_total_degree; ++q) {
        const int qp = q + p.n;
        cplx d = 0.0;
        for (std::size_t j = 0; j < cs.size(); ++j) {
          double poch = 1.0;  // Gamma(qp+j)/Gamma(qp)
          for (std::size_t i = 0; i < j; ++i)
            poch *= qp + static_cast<double>(i);
          d += cs[j] * std::pow(p.t, static_cast<double>(j)) * poch *
               std::pow(scale, -(qp + static_cast<double>(j)));
        }
        diag[static_cast<std::size_t>(q)] = d;
      }
      return diag;
    }
    case SymbolKind::radial_step: {
      for (int q = 0; q <= max_total_degree; ++q) {
        const int qp = q + p.n;
        cplx d = 0.0;
        double prev = 0.0;  // P(qp, x) at the previous breakpoint
        for (std::size_t k = 0; k < f.values.size(); ++k) {
          const double r = f.radii[k];
          const double cur = std::isfinite(r)
                                 ? special::lower_reg_gamma(qp, r * r / p.t)
                                 : 1.0;
          d += f.values[k] * (cur - prev);
          prev = cur;
        }
        diag[static_cast<std::size_t>(q)] = d;
      }
      return diag;
    }
    case SymbolKind::ball: {
      for (int q = 0; q <= max_total_degree; ++q) {
        const int qp = q + p.n;
        diag[static_cast<std::size_t>(q)] =
            std::isfinite(f.radius)
                ? special::lower_reg_gamma(qp, f.radius * f.radius / p.t)
                : 1.0;
      }
      return diag;
    }
  }
  throw std::logic_error("unreachable symbol kind");
}

// Shared tensor-quadrature assembly: entries(i, j) = sum_k w_k col_j(k)
// conj(row_i(k)) with col_j(k) = weight_fn(f(z_k), e_{m_j}(z_k)).
Eigen::MatrixXcd assemble_tensor(const FockParams& p,
                                 const std::vector<MultiIndex>& basis,
                                 const std::function<cplx(const CPoint&)>& f,
                                 int order,
                                 bool conjugate_column) {
  const quad::PlaneNodes nodes = quad::gaussian_nodes(p.n, p.t, order);
  const std::size_t K = nodes.count();
  const std::size_t M = basis.size();
  if (M * K > kEntryBudget)
    throw NumericRefusal(
        "tensor assembly budget exceeded: " + std::to_string(M) +
            " basis functions x " + std::to_string(K) + " nodes",
        "lower the degree or the quadrature order");

  const std::vector<cplx> table = onb_node_table(p, basis, nodes.coords);
  std::vector<cplx> fv(K);
  for (std::size_t k = 0; k < K; ++k) {
    CPoint z;
    z.n = p.n;
    for (int j = 0; j < p.n; ++j)
      z.v[static_cast<std::size_t>(j)] = nodes.coords[k * p.n + j];
    fv[k] = f(z);
  }

  Eigen::MatrixXcd m(static_cast<Eigen::Index>(M), static_cast<Eigen::Index>(M));
  std::vector<cplx> col(K);
  const std::span<const double> w(nodes.w);
  for (std::size_t j = 0; j < M; ++j) {
    const cplx* bj = table.data() + j * K;
    if (conjugate_column)
      for (std::size_t k = 0; k < K; ++k) col[k] = fv[k] * std::conj(bj[k]);
    else
      for (std::size_t k = 0; k < K; ++k) col[k] = fv[k] * bj[k];
    for (std::size_t i = 0; i < M; ++i) {
      const std::span<const cplx> bi(table.data() + i * K, K);
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          simd::weighted_cdotc(w, col, bi);
    }
  }
  return m;
}

}  // namespace

std::vector<cplx> radial_toeplitz_diagonal(const Symbol& f, const FockParams& p,
                                           int max_total_degree,
                                           bool force_quadrature,
                                           int quad_order) {
  p.validate();
  f.validate();
  check_degree(max_total_degree);
  if (!f.radial())
    throw PreconditionError("symbol",
                            "diagonal reduction needs a radial symbol");
  if (force_quadrature)
    return diagonal_by_quadrature(f, p, max_total_degree, quad_order);
  return diagonal_closed(f, p, max_total_degree);
}

TruncatedOperator toeplitz_matrix(const Symbol& f, const FockParams& p,
                                  int degree, ToeplitzMethod method,
                                  int quad_order) {
  p.validate();
  f.validate();
  check_degree(degree);

  if (method == ToeplitzMethod::automatic)
    method = f.radial() ? ToeplitzMethod::analytic_diagonal
                        : ToeplitzMethod::tensor_quadrature;

  TruncatedOperator T;
  T.params = p;
  T.degree = degree;
  T.basis = enumerate_multiindices(p.n, degree);
  T.symbol_text = f.describe();
  const Eigen::Index M = static_cast<Eigen::Index>(T.basis.size());

  switch (method) {
    case ToeplitzMethod::analytic_diagonal:
    case ToeplitzMethod::radial_quadrature: {
      if (!f.radial())
        throw PreconditionError(
            "method", "diagonal construction needs a radial symbol");
      const std::vector<cplx> diag = radial_toeplitz_diagonal(
          f, p, degree, method == ToeplitzMethod::radial_quadrature,
          quad_order);
      T.entries = Eigen::MatrixXcd::Zero(M, M);
      for (Eigen::Index i = 0; i < M; ++i)
        T.entries(i, i) = diag[static_cast<std::size_t>(
            T.basis[static_cast<std::size_t>(i)].order())];
      T.method = method == ToeplitzMethod::analytic_diagonal
                     ? "analytic-diagonal"
                     : "radial-quadrature";
      return T;
    }
    case ToeplitzMethod::tensor_quadrature: {
      int order = quad_order == 0 ? std::max(60, degree + 20) : quad_order;
      if (order < degree + 10)
        throw NumericRefusal(
            "tensor quadrature order " + std::to_string(order) +
                " is too coarse for degree " + std::to_string(degree),
            "use quad order >= " + std::to_string(degree + 10));
      T.entries = assemble_tensor(
          p, T.basis, [&f](const CPoint& z) { return f.eval(z); }, order,
          /*conjugate_column=*/false);
      T.method = "tensor-quadrature";
      return T;
    }
    case ToeplitzMethod::automatic:
      break;
  }
  throw std::logic_error("unreachable construction method");
}

TruncatedOperator hankel_antilinear_matrix(
    const std::function<cplx(const CPoint&)>& f, const std::string& descriptor,
    const FockParams& p, int degree, int quad_order) {
  p.validate();
  check_degree(degree);
  if (p.t != 1.0)
    throw PreconditionError(
        "t", "the antilinear companion is defined on the t = 1 space");

  TruncatedOperator T;
  T.params = p;
  T.degree = degree;
  T.basis = enumerate_multiindices(p.n, degree);
  T.symbol_text = descriptor;
  int order = quad_order == 0 ? std::max(60, degree + 20) : quad_order;
  if (order < degree + 10)
    throw NumericRefusal("tensor quadrature order " + std::to_string(order) +
                             " is too coarse for degree " +
                             std::to_string(degree),
                         "use quad order >= " + std::to_string(degree + 10));
  T.entries = assemble_tensor(p, T.basis, f, order, /*conjugate_column=*/true);
  T.method = "tensor-quadrature";
  return T;
}

TruncatedOperator hankel_antilinear_matrix(const Symbol& f, const FockParams& p,
                                           int degree, int quad_order) {
  f.validate();
  return hankel_antilinear_matrix(
      [&f](const CPoint& z) { return f.eval(z); }, f.describe(), p, degree,
      quad_order);
}

double spectral_norm(const Eigen::MatrixXcd& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  const Eigen::MatrixXcd h = m.adjoint() * m;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h,
                                                     Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw NumericRefusal("eigenvalue iteration failed on the Hermitian square",
                         "matrix may be ill-conditioned");
  const double top = es.eigenvalues().maxCoeff();
  return top > 0.0 ? std::sqrt(top) : 0.0;
}

SpectralReport operator_norm(const TruncatedOperator& T,
                             bool convergence_trace) {
  const Eigen::Index M = T.entries.rows();
  if (M != T.entries.cols() || M != static_cast<Eigen::Index>(T.basis.size()))
    throw PreconditionError("operator", "entries do not match the basis");

  SpectralReport rep;
  double offdiag = 0.0;
  for (Eigen::Index j = 0; j < M; ++j)
    for (Eigen::Index i = 0; i < M; ++i)
      if (i != j) offdiag = std::max(offdiag, std::abs(T.entries(i, j)));
  rep.diagonal = offdiag < 1e-12;

  if (rep.diagonal) {
    for (Eigen::Index i = 0; i < M; ++i) {
      const double a = std::abs(T.entries(i, i));
      if (a > rep.norm) {
        rep.norm = a;
        rep.attained = static_cast<int>(i);
      }
    }
  } else {
    rep.norm = spectral_norm(T.entries);
  }

  if (convergence_trace) {
    rep.trace.reserve(static_cast<std::size_t>(T.degree) + 1);
    for (int d = 0; d <= T.degree; ++d) {
      const Eigen::Index md =
          static_cast<Eigen::Index>(multiindex_count(T.params.n, d));
      if (rep.diagonal) {
        double v = 0.0;
        for (Eigen::Index i = 0; i < md; ++i)
          v = std::max(v, std::abs(T.entries(i, i)));
        rep.trace.push_back(v);
      } else {
        rep.trace.push_back(spectral_norm(T.entries.topLeftCorner(md, md)));
      }
    }
  }
  return rep;
}

double hermitian_defect(const TruncatedOperator& T) {
  double d = 0.0;
  for (Eigen::Index j = 0; j < T.entries.cols(); ++j)
    for (Eigen::Index i = 0; i < T.entries.rows(); ++i)
      d = std::max(d,
                   std::abs(T.entries(i, j) - std::conj(T.entries(j, i))));
  return d;
}

cplx berezin_pairing(const TruncatedOperator& T, const CPoint& z,
                     const CPoint& w) {
  const KernelCoefficients cz = kernel_coefficients(T.params, z, T.degree);
  const KernelCoefficients cw = kernel_coefficients(T.params, w, T.degree);
  const Eigen::Index M = T.entries.rows();
  Eigen::Map<const Eigen::VectorXcd> vz(cz.c.data(), M);
  Eigen::Map<const Eigen::VectorXcd> vw(cw.c.data(), M);
  return vw.dot(T.entries * vz);
}

OperatorBerezin berezin_of_operator(const TruncatedOperator& T,
                                    const CPoint& z, const CPoint* w,
                                    double tail_tol) {
  const CPoint& w2 = w ? *w : z;
  const double tz = std::sqrt(kernel_tail_mass(T.params, z, T.degree));
  const double tw = std::sqrt(kernel_tail_mass(T.params, w2, T.degree));
  const double worst = std::max(tz, tw);
  if (worst > tail_tol) {
    std::string hint;
    try {
      const CPoint& bad = tz >= tw ? z : w2;
      hint = "degree >= " +
             std::to_string(min_degree_for_tail(T.params, bad,
                                                tail_tol * tail_tol)) +
             " reaches the requested tail tolerance";
    } catch (const NumericRefusal&) {
      hint = "no supported degree reaches the requested tail tolerance";
    }
    throw NumericRefusal(
        "kernel coefficient tail " + std::to_string(worst) +
            " exceeds the tolerance at degree " + std::to_string(T.degree),
        hint);
  }

  OperatorBerezin out;
  out.value = berezin_pairing(T, z, w2);
  out.tail_bound = operator_norm(T).norm * (tz + tw);
  return out;
}

cplx apply_integral_operator(const Symbol& f,
                             const std::function<cplx(const CPoint&)>& g,
                             const FockParams& p, const CPoint& z,
                             int outer_order, const PairingOptions& inner) {
  p.validate();
  f.validate();
  if (outer_order < 40)
    throw NumericRefusal(
        "outer rule of order " + std::to_string(outer_order) +
            " is too coarse for the double-quadrature representation",
        "use outer order >= 40");
  const double t = p.t;
  return quad::integrate_gaussian(p.n, t, outer_order, [&](const CPoint& w) {
    const double pref =
        std::exp(dist2(z, w) / (2.0 * t) + herm_dot(z, w).real() / t);
    return pref * kernel_pairing(p, f, w, z, inner) * g(w);
  });
}

GLambdaReport glambda_report(cplx lambda, double t, double s, int n,
                             int dmax) {
  FockParams{n, t}.validate();
  if (!(s > 0.0) || !std::isfinite(s))
    throw PreconditionError("s", "flow time must be positive and finite");
  check_degree(dmax);
  const cplx scale = 1.0 - lambda * t;
  if (std::abs(scale) < 1e-14)
    throw PreconditionError("lambda",
                            "1 - t*lambda = 0: the diagonal family has a pole");

  GLambdaReport rep;
  rep.lambda = lambda;
  rep.t = t;
  rep.s = s;
  rep.n = n;
  rep.dmax = dmax;
  rep.operator_bounded = std::abs(scale) >= 1.0;
  rep.heat_bounded = std::abs(1.0 - 2.0 * s * lambda) >= 1.0;
  rep.dilation_factor = 1.0 / scale;
  rep.eigenvalues.reserve(static_cast<std::size_t>(dmax) + 1);
  for (int q = 0; q <= dmax; ++q)
    rep.eigenvalues.push_back(std::pow(scale, -(q + n)));
  rep.unitary_truncation =
      t == 1.0 && std::abs(std::abs(rep.dilation_factor) - 1.0) <= 1e-12;
  if (rep.unitary_truncation) {
    for (const cplx& ev : rep.eigenvalues)
      rep.max_abs_dev = std::max(rep.max_abs_dev,
                                 std::abs(std::abs(ev) - 1.0));
  }
  return rep;
}

namespace {

void json_escape_into(std::string& out, const std::string& s) {
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
}

}  // namespace

void export_operator(const TruncatedOperator& T,
                     const std::filesystem::path& binary_path,
                     const std::filesystem::path& sidecar_path) {
  {
    std::ofstream out(binary_path, std::ios::binary);
    if (!out)
      throw PreconditionError("out",
                              "cannot open '" + binary_path.string() +
                                  "' for writing");
    const char magic[8] = {'F', 'O', 'C', 'K', 'M', 'A', 'T', '1'};
    out.write(magic, 8);
    const std::uint32_t version = 1, reserved = 0;
    out.write(reinterpret_cast<const char*>(&version), 4);
    out.write(reinterpret_cast<const char*>(&reserved), 4);
    const std::uint64_t rows = static_cast<std::uint64_t>(T.entries.rows());
    const std::uint64_t cols = static_cast<std::uint64_t>(T.entries.cols());
    out.write(reinterpret_cast<const char*>(&rows), 8);
    out.write(reinterpret_cast<const char*>(&cols), 8);
    for (Eigen::Index j = 0; j < T.entries.cols(); ++j)
      for (Eigen::Index i = 0; i < T.entries.rows(); ++i) {
        const double re = T.entries(i, j).real();
        const double im = T.entries(i, j).imag();
        out.write(reinterpret_cast<const char*>(&re), 8);
        out.write(reinterpret_cast<const char*>(&im), 8);
      }
    if (!out)
      throw PreconditionError("out", "write failed on '" +
                                         binary_path.string() + "'");
  }

  std::ostringstream hash;
  hash << "0x" << std::hex << basis_order_hash(T.basis);
  std::string j;
  j += "{\n  \"schema\": \"focklab.operator/1\",\n";
  j += "  \"n\": " + std::to_string(T.params.n) + ",\n";
  j += "  \"t\": " + format_double(T.params.t) + ",\n";
  j += "  \"degree\": " + std::to_string(T.degree) + ",\n";
  j += "  \"rows\": " + std::to_string(T.entries.rows()) + ",\n";
  j += "  \"cols\": " + std::to_string(T.entries.cols()) + ",\n";
  j += "  \"basis_order_hash\": \"" + hash.str() + "\",\n";
  j += "  \"symbol\": \"";
  json_escape_into(j, T.symbol_text);
  j += "\",\n  \"method\": \"";
  json_escape_into(j, T.method);
  j += "\",\n  \"binary\": \"";
  json_escape_into(j, binary_path.filename().string());
  j += "\"\n}\n";

  std::ofstream side(sidecar_path, std::ios::binary);
  if (!side)
    throw PreconditionError(
        "out", "cannot open '" + sidecar_path.string() + "' for writing");
  side << j;
}

Eigen::MatrixXcd read_operator_matrix(const std::filesystem::path& binary_path) {
  std::ifstream in(binary_path, std::ios::binary);
  if (!in)
    throw PreconditionError("path",
                            "cannot open '" + binary_path.string() + "'");
  char magic[8];
  in.read(magic, 8);
  if (!in || std::string(magic, 8) != "FOCKMAT1")
    throw PreconditionError("path", "not a focklab matrix container");
  std::uint32_t version = 0, reserved = 0;
  in.read(reinterpret_cast<char*>(&version), 4);
  in.read(reinterpret_cast<char*>(&reserved), 4);
  if (version != 1)
    throw PreconditionError("path", "unsupported container version " +
                                        std::to_string(version));
  std::uint64_t rows = 0, cols = 0;
  in.read(reinterpret_cast<char*>(&rows), 8);
  in.read(reinterpret_cast<char*>(&cols), 8);
  if (!in || rows > 4096 || cols > 4096)
    throw PreconditionError("path", "matrix dimensions out of range");
  Eigen::MatrixXcd m(static_cast<Eigen::Index>(rows),
                     static_cast<Eigen::Index>(cols));
  for (std::uint64_t j = 0; j < cols; ++j)
    for (std::uint64_t i = 0; i < rows; ++i) {
      double re = 0.0, im = 0.0;
      in.read(reinterpret_cast<char*>(&re), 8);
      in.read(reinterpret_cast<char*>(&im), 8);
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          cplx{re, im};
    }
  if (!in)
    throw PreconditionError("path", "truncated matrix container");
  return m;
}

}  // namespace focklab

#include "focklab/symbol.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <limits>
#include <map>

#include "focklab/errors.hpp"

namespace focklab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, pos - start));
    start = pos + 1;
  }
}

double parse_double(const std::string& raw) {
  std::string s = lower(trim(raw));
  if (!s.empty() && s[0] == '+') s.erase(0, 1);  // from_chars rejects '+'
  double v{};
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size() || std::isnan(v))
    throw PreconditionError("symbol", "cannot parse number '" + trim(raw) + "'");
  return v;
}

double parse_imag_literal(const std::string& part) {
  if (part.empty() || part == "+") return 1.0;
  if (part == "-") return -1.0;
  return parse_double(part);
}

bool finite_c(cplx v) {
  return std::isfinite(v.real()) && std::isfinite(v.imag());
}

template <class T, class Fmt>
std::string join(const std::vector<T>& xs, Fmt fmt) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ",";
    out += fmt(xs[i]);
  }
  return out;
}

}  // namespace

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, end);
}

std::string format_complex(cplx v) {
  if (v.imag() == 0.0) return format_double(v.real());
  std::string s;
  if (v.real() != 0.0) {
    s = format_double(v.real());
    if (!(v.imag() < 0.0)) s += "+";
  }
  s += format_double(v.imag());
  s += "i";
  return s;
}

cplx parse_complex(const std::string& raw) {
  const std::string s = trim(raw);
  if (s.empty()) throw PreconditionError("symbol", "empty complex literal");
  if (std::tolower(static_cast<unsigned char>(s.back())) != 'i')
    return {parse_double(s), 0.0};
  const std::string body = s.substr(0, s.size() - 1);
  // Split the trailing imaginary term off at the last sign that is not an
  // exponent sign; "1e-3+2e-4i" splits at the '+', "1e-3i" does not split.
  int cut = -1;
  for (int k = static_cast<int>(body.size()) - 1; k > 0; --k) {
    const char c = body[k];
    if ((c == '+' || c == '-') &&
        std::tolower(static_cast<unsigned char>(body[k - 1])) != 'e') {
      cut = k;
      break;
    }
  }
  if (cut < 0) return {0.0, parse_imag_literal(body)};
  return {parse_double(body.substr(0, cut)), parse_imag_literal(body.substr(cut))};
}

Symbol Symbol::constant(cplx v) {
  Symbol s;
  s.kind = SymbolKind::constant;
  s.value = v;
  s.validate();
  return s;
}

Symbol Symbol::gaussian(cplx lambda) {
  Symbol s;
  s.kind = SymbolKind::gaussian;
  s.lambda = lambda;
  s.validate();
  return s;
}

Symbol Symbol::radial_step(std::vector<double> radii, std::vector<cplx> values) {
  Symbol s;
  s.kind = SymbolKind::radial_step;
  s.radii = std::move(radii);
  s.values = std::move(values);
  s.validate();
  return s;
}

Symbol Symbol::ball(std::vector<cplx> center, double radius) {
  Symbol s;
  s.kind = SymbolKind::ball;
  s.center = std::move(center);
  s.radius = radius;
  s.validate();
  return s;
}

Symbol Symbol::poly_gaussian(std::vector<cplx> coeffs, cplx lambda) {
  Symbol s;
  s.kind = SymbolKind::poly_gaussian;
  s.coeffs = std::move(coeffs);
  s.lambda = lambda;
  s.validate();
  return s;
}

void Symbol::validate() const {
  switch (kind) {
    case SymbolKind::constant:
      if (!finite_c(value))
        throw PreconditionError("symbol", "constant value must be finite");
      return;
    case SymbolKind::gaussian:
      if (!finite_c(lambda))
        throw PreconditionError("symbol", "gaussian exponent must be finite");
      return;
    case SymbolKind::radial_step: {
      if (radii.empty() || radii.size() != values.size())
        throw PreconditionError(
            "symbol", "step symbol needs matching nonempty radius/value lists");
      double prev = 0.0;
      for (std::size_t k = 0; k < radii.size(); ++k) {
        const double r = radii[k];
        if (std::isnan(r) || r <= prev)
          throw PreconditionError("symbol",
                                  "step radii must be positive and strictly increasing");
        if (std::isinf(r) && k + 1 != radii.size())
          throw PreconditionError("symbol", "only the last step radius may be inf");
        prev = r;
      }
      for (cplx v : values)
        if (!finite_c(v))
          throw PreconditionError("symbol", "step values must be finite");
      return;
    }
    case SymbolKind::ball: {
      if (center.empty() || center.size() > static_cast<std::size_t>(kMaxComplexDim))
        throw PreconditionError("symbol",
                                "ball center must have between 1 and " +
                                    std::to_string(kMaxComplexDim) + " entries");
      for (cplx c : center)
        if (!finite_c(c))
          throw PreconditionError("symbol", "ball center must be finite");
      if (std::isnan(radius) || radius <= 0.0)
        throw PreconditionError("symbol", "ball radius must be positive");
      return;
    }
    case SymbolKind::poly_gaussian:
      if (coeffs.empty() || coeffs.size() > static_cast<std::size_t>(kMaxPolyCoeffs))
        throw PreconditionError("symbol",
                                "polynomial factor needs between 1 and " +
                                    std::to_string(kMaxPolyCoeffs) + " coefficients");
      for (cplx c : coeffs)
        if (!finite_c(c))
          throw PreconditionError("symbol", "polynomial coefficients must be finite");
      if (!finite_c(lambda))
        throw PreconditionError("symbol", "gaussian exponent must be finite");
      return;
  }
  throw std::logic_error("unreachable symbol kind");
}

cplx Symbol::eval(const CPoint& z) const {
  switch (kind) {
    case SymbolKind::constant:
      return value;
    case SymbolKind::gaussian:
      return std::exp(lambda * norm2(z));
    case SymbolKind::radial_step:
      return radial_value(std::sqrt(norm2(z)));
    case SymbolKind::ball: {
      if (static_cast<std::size_t>(z.n) != center.size())
        throw PreconditionError("symbol",
                                "ball center dimension does not match the point");
      if (std::isinf(radius)) return 1.0;
      double d2 = 0.0;
      for (int j = 0; j < z.n; ++j) d2 += std::norm(z.v[j] - center[j]);
      return d2 <= radius * radius ? 1.0 : 0.0;
    }
    case SymbolKind::poly_gaussian: {
      const double x = norm2(z);
      cplx poly = 0.0;
      for (std::size_t j = coeffs.size(); j-- > 0;) poly = poly * x + coeffs[j];
      return poly * std::exp(lambda * x);
    }
  }
  throw std::logic_error("unreachable symbol kind");
}

bool Symbol::radial() const {
  if (kind != SymbolKind::ball) return true;
  return std::all_of(center.begin(), center.end(),
                     [](cplx c) { return c == cplx{0.0, 0.0}; });
}

cplx Symbol::radial_value(double r) const {
  switch (kind) {
    case SymbolKind::constant:
      return value;
    case SymbolKind::gaussian:
      return std::exp(lambda * r * r);
    case SymbolKind::radial_step: {
      for (std::size_t k = 0; k < radii.size(); ++k)
        if (r < radii[k]) return values[k];
      return 0.0;
    }
    case SymbolKind::ball:
      if (!radial())
        throw PreconditionError("symbol",
                                "off-center ball has no radial profile");
      return r <= radius ? 1.0 : 0.0;
    case SymbolKind::poly_gaussian: {
      const double x = r * r;
      cplx poly = 0.0;
      for (std::size_t j = coeffs.size(); j-- > 0;) poly = poly * x + coeffs[j];
      return poly * std::exp(lambda * x);
    }
  }
  throw std::logic_error("unreachable symbol kind");
}

std::vector<double> Symbol::radial_breakpoints() const {
  std::vector<double> out;
  if (kind == SymbolKind::radial_step) {
    for (double r : radii)
      if (std::isfinite(r)) out.push_back(r);
  } else if (kind == SymbolKind::ball && radial() && std::isfinite(radius)) {
    out.push_back(radius);
  }
  return out;
}

bool Symbol::compactly_supported() const {
  return std::isfinite(support_radius());
}

double Symbol::support_radius() const {
  switch (kind) {
    case SymbolKind::radial_step:
      return radii.back();
    case SymbolKind::ball: {
      if (std::isinf(radius)) return kInf;
      double c2 = 0.0;
      for (cplx c : center) c2 += std::norm(c);
      return std::sqrt(c2) + radius;
    }
    case SymbolKind::constant:
      return value == cplx{0.0, 0.0} ? 0.0 : kInf;
    default:
      return kInf;
  }
}

double Symbol::sup_abs() const {
  switch (kind) {
    case SymbolKind::constant:
      return std::abs(value);
    case SymbolKind::gaussian:
      return lambda.real() <= 0.0 ? 1.0 : kInf;
    case SymbolKind::radial_step: {
      double best = 0.0;
      for (cplx v : values) best = std::max(best, std::abs(v));
      return best;
    }
    case SymbolKind::ball:
      return 1.0;
    case SymbolKind::poly_gaussian: {
      const double a = lambda.real();
      if (a > 0.0) return kInf;
      if (a == 0.0) return coeffs.size() == 1 ? std::abs(coeffs[0]) : kInf;
      // |P(x)| e^{a x} on x >= 0 with a < 0: dense scan out to where the
      // exponential has won, then a short golden-section refinement.
      auto g = [&](double x) {
        cplx poly = 0.0;
        for (std::size_t j = coeffs.size(); j-- > 0;) poly = poly * x + coeffs[j];
        return std::abs(poly) * std::exp(a * x);
      };
      const double X = (static_cast<double>(coeffs.size()) + 40.0) / (-a);
      const int samples = 8192;
      double best = 0.0, xbest = 0.0;
      for (int i = 0; i <= samples; ++i) {
        const double x = X * i / samples;
        const double v = g(x);
        if (v > best) {
          best = v;
          xbest = x;
        }
      }
      double lo = std::max(0.0, xbest - X / samples);
      double hi = std::min(X, xbest + X / samples);
      const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
      for (int it = 0; it < 80; ++it) {
        const double x1 = hi - gr * (hi - lo);
        const double x2 = lo + gr * (hi - lo);
        if (g(x1) < g(x2))
          lo = x1;
        else
          hi = x2;
      }
      return std::max(best, g(0.5 * (lo + hi)));
    }
  }
  throw std::logic_error("unreachable symbol kind");
}

std::string Symbol::kind_name() const {
  switch (kind) {
    case SymbolKind::constant:
      return "constant";
    case SymbolKind::gaussian:
      return "gaussian";
    case SymbolKind::radial_step:
      return "step";
    case SymbolKind::ball:
      return "ball";
    case SymbolKind::poly_gaussian:
      return "polygauss";
  }
  throw std::logic_error("unreachable symbol kind");
}

std::string Symbol::describe() const {
  switch (kind) {
    case SymbolKind::constant:
      return "constant:v=" + format_complex(value);
    case SymbolKind::gaussian:
      return "gaussian:lambda=" + format_complex(lambda);
    case SymbolKind::radial_step:
      return "step:r=" + join(radii, format_double) +
             ";v=" + join(values, format_complex);
    case SymbolKind::ball:
      return "ball:center=" + join(center, format_complex) +
             ";radius=" + format_double(radius);
    case SymbolKind::poly_gaussian:
      return "polygauss:coeffs=" + join(coeffs, format_complex) +
             ";lambda=" + format_complex(lambda);
  }
  throw std::logic_error("unreachable symbol kind");
}

Symbol parse_symbol(const std::string& text) {
  const std::string s = trim(text);
  const std::size_t colon = s.find(':');
  const std::string kind =
      lower(trim(colon == std::string::npos ? s : s.substr(0, colon)));

  std::map<std::string, std::string> kv;
  if (colon != std::string::npos) {
    for (const std::string& field : split(s.substr(colon + 1), ';')) {
      if (trim(field).empty()) continue;
      const std::size_t eq = field.find('=');
      if (eq == std::string::npos)
        throw PreconditionError("symbol",
                                "expected key=value, got '" + trim(field) + "'");
      kv[lower(trim(field.substr(0, eq)))] = trim(field.substr(eq + 1));
    }
  }

  auto take = [&](const char* key) {
    const auto it = kv.find(key);
    if (it == kv.end())
      throw PreconditionError("symbol", "symbol kind '" + kind +
                                            "' needs the key '" + key + "'");
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  auto finish = [&](Symbol out) {
    if (!kv.empty())
      throw PreconditionError("symbol", "unknown key '" + kv.begin()->first +
                                            "' for symbol kind '" + kind + "'");
    return out;
  };
  auto complex_list = [](const std::string& v) {
    std::vector<cplx> xs;
    for (const std::string& piece : split(v, ',')) xs.push_back(parse_complex(piece));
    return xs;
  };

  if (kind == "constant") return finish(Symbol::constant(parse_complex(take("v"))));
  if (kind == "gaussian")
    return finish(Symbol::gaussian(parse_complex(take("lambda"))));
  if (kind == "step") {
    std::vector<double> radii;
    for (const std::string& piece : split(take("r"), ','))
      radii.push_back(parse_double(piece));
    std::vector<cplx> values = complex_list(take("v"));
    // Two equivalent spellings: right endpoints only (lists of equal
    // length), or an explicit leading left edge 0 with one more radius
    // than values.
    if (radii.size() == values.size() + 1 && !radii.empty() &&
        radii.front() == 0.0)
      radii.erase(radii.begin());
    return finish(Symbol::radial_step(std::move(radii), std::move(values)));
  }
  if (kind == "ball")
    return finish(
        Symbol::ball(complex_list(take("center")), parse_double(take("radius"))));
  if (kind == "polygauss")
    return finish(Symbol::poly_gaussian(complex_list(take("coeffs")),
                                        parse_complex(take("lambda"))));
  throw PreconditionError("symbol", "unknown symbol kind '" + kind + "'");
}

}  // namespace focklab

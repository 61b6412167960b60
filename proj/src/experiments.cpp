#include "focklab/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <utility>

#include <Eigen/Eigenvalues>

#include "json.hpp"

#include "focklab/bounds.hpp"
#include "focklab/errors.hpp"
#include "focklab/heat.hpp"
#include "focklab/localization.hpp"
#include "focklab/quadrature.hpp"
#include "focklab/symbol.hpp"
#include "focklab/toeplitz.hpp"

namespace focklab {

namespace {

struct KindName {
  ExperimentKind kind;
  const char* name;
};

constexpr KindName kKindNames[] = {
    {ExperimentKind::heat, "heat"},
    {ExperimentKind::spectrum, "spectrum"},
    {ExperimentKind::berezin_field, "berezin-field"},
    {ExperimentKind::bc_bound, "bc-bound"},
    {ExperimentKind::sandwich, "sandwich"},
    {ExperimentKind::localization, "localization"},
    {ExperimentKind::tail, "tail"},
    {ExperimentKind::phase_diagram, "phase-diagram"},
    {ExperimentKind::pbdop, "pbdop"},
};

}  // namespace

ExperimentKind parse_experiment_kind(const std::string& name) {
  for (const KindName& kn : kKindNames)
    if (name == kn.name) return kn.kind;
  throw PreconditionError(
      "experiment",
      "unknown experiment '" + name +
          "' (expected heat | spectrum | berezin-field | bc-bound | sandwich "
          "| localization | tail | phase-diagram | pbdop)");
}

const char* experiment_kind_name(ExperimentKind kind) {
  for (const KindName& kn : kKindNames)
    if (kind == kn.kind) return kn.name;
  return "unknown";
}

void ExperimentConfig::validate() const {
  if (!(t > 0.0) || !std::isfinite(t))
    throw PreconditionError("t", "the space parameter t must be positive");
  if (!std::isfinite(s))
    throw PreconditionError("s", "s must be finite");
  if (dim < 1 || dim > kMaxComplexDim)
    throw PreconditionError("dim", "dimension must be between 1 and " +
                                       std::to_string(kMaxComplexDim));
  if (degree < 0 || degree > 512)
    throw PreconditionError("degree",
                            "truncation degree must be between 0 and 512");
  if (!(grid_extent > 0.0) || !std::isfinite(grid_extent))
    throw PreconditionError("grid-extent", "grid extent must be positive");
  if (!(grid_step > 0.0) || grid_step > grid_extent)
    throw PreconditionError(
        "grid-step", "grid step must be positive and at most the extent");
  if (quad_order < 0 || quad_order > quad::kMaxRuleOrder)
    throw PreconditionError(
        "quad-order", "quadrature order must be between 0 and " +
                          std::to_string(quad::kMaxRuleOrder));
  if (format != "csv" && format != "json")
    throw PreconditionError("format", "format must be csv or json");
  switch (kind) {
    case ExperimentKind::heat:
      if (!(s > 0.0))
        throw PreconditionError("s", "the heat time must be positive");
      break;
    case ExperimentKind::pbdop:
      if (dim != 1)
        throw PreconditionError("dim",
                                "band kernels are implemented over C (n=1)");
      if (s < 0.0)
        throw PreconditionError("s", "the band width must be >= 0");
      break;
    default:
      break;
  }
}

Cell Cell::number(double v) {
  Cell c;
  c.type = Type::number;
  c.num = v;
  return c;
}

Cell Cell::boolean(bool v) {
  Cell c;
  c.type = Type::boolean;
  c.flag = v;
  return c;
}

Cell Cell::str(std::string v) {
  Cell c;
  c.type = Type::text;
  c.text = std::move(v);
  return c;
}

std::string format_number17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

// -------------------------------------------------------------- emit helpers

std::string json_number(double v) {
  if (!std::isfinite(v)) return "null";
  return format_number17(v);
}

void json_escape_into(std::string& out, const std::string& s) {
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x",
                        static_cast<unsigned>(static_cast<unsigned char>(ch)));
          out += buf;
        } else {
          out += ch;
        }
    }
  }
}

std::string json_string(const std::string& s) {
  std::string out = "\"";
  json_escape_into(out, s);
  out += "\"";
  return out;
}

std::string json_cell(const Cell& c) {
  switch (c.type) {
    case Cell::Type::number: return json_number(c.num);
    case Cell::Type::boolean: return c.flag ? "true" : "false";
    case Cell::Type::text: return json_string(c.text);
  }
  return "null";
}

std::string csv_quote(const std::string& s) {
  const bool needs =
      s.find_first_of(",\"\r\n") != std::string::npos;
  if (!needs) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += "\"\"";
    else out += ch;
  }
  out += "\"";
  return out;
}

std::string csv_cell(const Cell& c) {
  switch (c.type) {
    case Cell::Type::number: return format_number17(c.num);
    case Cell::Type::boolean: return c.flag ? "true" : "false";
    case Cell::Type::text: return csv_quote(c.text);
  }
  return "";
}

std::string config_echo_json(const ExperimentConfig& cfg) {
  std::string out = "{";
  out += "\"experiment\":" + json_string(experiment_kind_name(cfg.kind));
  out += ",\"symbol\":" + json_string(cfg.symbol_text);
  out += ",\"t\":" + json_number(cfg.t);
  out += ",\"s\":" + json_number(cfg.s);
  out += ",\"dim\":" + std::to_string(cfg.dim);
  out += ",\"degree\":" + std::to_string(cfg.degree);
  out += ",\"gridExtent\":" + json_number(cfg.grid_extent);
  out += ",\"gridStep\":" + json_number(cfg.grid_step);
  out += ",\"quadOrder\":" + std::to_string(cfg.quad_order);
  out += "}";
  return out;
}

// --------------------------------------------------------- grid generation

// Closed-form lattice values lo + k*step (never accumulated), so repeated
// runs and different loop orders produce bit-identical coordinates.
std::vector<double> lattice(double lo, double step, int count) {
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) out[static_cast<std::size_t>(k)] = lo + k * step;
  return out;
}

int lattice_count(double lo, double hi, double step) {
  return static_cast<int>(std::floor((hi - lo) / step + 0.5)) + 1;
}

// ------------------------------------------------------- experiment bodies

void run_heat(const ExperimentConfig& cfg, const Symbol& f, ResultRecord& rec) {
  HeatOptions hopt;
  if (cfg.quad_order > 0) {
    hopt.radial_order = cfg.quad_order;
    hopt.tensor_order = cfg.quad_order;
  }
  RadialGrid grid{cfg.grid_extent, cfg.grid_step};
  grid.validate();
  rec.columns = {"rho", "re", "im", "abs"};
  double sup = 0.0;
  for (double rho : grid.radii()) {
    const cplx v = heat_transform(f, cfg.s, radial_point(cfg.dim, rho),
                                  HeatMethod::automatic, hopt);
    sup = std::max(sup, std::abs(v));
    rec.rows.push_back({Cell::number(rho), Cell::number(v.real()),
                        Cell::number(v.imag()), Cell::number(std::abs(v))});
  }
  rec.scalars.push_back({"supAbs", Cell::number(sup)});
}

void run_spectrum(const ExperimentConfig& cfg, const Symbol& f,
                  ResultRecord& rec) {
  const FockParams p{cfg.dim, cfg.t};
  const TruncatedOperator T =
      toeplitz_matrix(f, p, cfg.degree, ToeplitzMethod::automatic,
                      cfg.quad_order);
  if (f.radial()) {
    const std::vector<cplx> diag =
        radial_toeplitz_diagonal(f, p, cfg.degree, false, cfg.quad_order);
    rec.columns = {"q", "re", "im", "abs"};
    for (std::size_t q = 0; q < diag.size(); ++q)
      rec.rows.push_back({Cell::number(static_cast<double>(q)),
                          Cell::number(diag[q].real()),
                          Cell::number(diag[q].imag()),
                          Cell::number(std::abs(diag[q]))});
  } else {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(T.entries, false);
    std::vector<cplx> ev(static_cast<std::size_t>(T.dim()));
    for (int i = 0; i < T.dim(); ++i) ev[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
    std::sort(ev.begin(), ev.end(), [](cplx a, cplx b) {
      const double ma = std::abs(a), mb = std::abs(b);
      if (ma != mb) return ma > mb;
      if (a.real() != b.real()) return a.real() > b.real();
      return a.imag() > b.imag();
    });
    rec.columns = {"index", "re", "im", "abs"};
    for (std::size_t i = 0; i < ev.size(); ++i)
      rec.rows.push_back({Cell::number(static_cast<double>(i)),
                          Cell::number(ev[i].real()),
                          Cell::number(ev[i].imag()),
                          Cell::number(std::abs(ev[i]))});
  }
  rec.scalars.push_back(
      {"compressionNorm", Cell::number(operator_norm(T).norm)});
  rec.scalars.push_back({"hermitianDefect", Cell::number(hermitian_defect(T))});
  rec.scalars.push_back({"method", Cell::str(T.method)});
}

void run_berezin_field(const ExperimentConfig& cfg, const Symbol& f,
                       ResultRecord& rec) {
  const FockParams p{cfg.dim, cfg.t};
  const TruncatedOperator T =
      toeplitz_matrix(f, p, cfg.degree, ToeplitzMethod::automatic,
                      cfg.quad_order);
  HeatOptions hopt;
  if (cfg.quad_order > 0) {
    hopt.radial_order = cfg.quad_order;
    hopt.tensor_order = cfg.quad_order;
  }
  RadialGrid grid{cfg.grid_extent, cfg.grid_step};
  grid.validate();
  rec.columns = {"rho", "re", "im", "heatRe", "heatIm", "delta", "tailBound"};
  // Loose coefficient-tail gate: the per-point truncation bound is reported
  // in its own column, so far-out samples stay informative rather than
  // refusing outright.
  const double kTailGate = 0.05;
  const double kMatchTol = 1e-6;
  bool all_ok = true;
  double max_delta = 0.0, max_tail = 0.0;
  for (double rho : grid.radii()) {
    const CPoint z = radial_point(cfg.dim, rho);
    const OperatorBerezin ob = berezin_of_operator(T, z, nullptr, kTailGate);
    const cplx hv = berezin_transform(p, f, z, HeatMethod::automatic, hopt);
    const double delta = std::abs(ob.value - hv);
    all_ok = all_ok && delta <= kMatchTol + ob.tail_bound;
    max_delta = std::max(max_delta, delta);
    max_tail = std::max(max_tail, ob.tail_bound);
    rec.rows.push_back({Cell::number(rho), Cell::number(ob.value.real()),
                        Cell::number(ob.value.imag()),
                        Cell::number(hv.real()), Cell::number(hv.imag()),
                        Cell::number(delta), Cell::number(ob.tail_bound)});
  }
  rec.scalars.push_back({"maxDelta", Cell::number(max_delta)});
  rec.scalars.push_back({"maxTailBound", Cell::number(max_tail)});
  rec.verdicts.push_back({"matchesHeat", all_ok, kMatchTol});
}

void run_bc_bound(const ExperimentConfig& cfg, const Symbol& f,
                  ResultRecord& rec) {
  const BcBoundCheck res = bc_bound_check(f, cfg.s, cfg.t, cfg.dim, cfg.degree,
                                          cfg.grid_extent, cfg.grid_step);
  rec.scalars.push_back({"lhsNorm", Cell::number(res.lhs_norm)});
  rec.scalars.push_back({"rhsBound", Cell::number(res.rhs_bound)});
  rec.scalars.push_back({"margin", Cell::number(res.margin)});
  rec.scalars.push_back({"gamma", Cell::number(res.constants.gamma)});
  rec.scalars.push_back({"C", Cell::number(res.constants.c)});
  rec.scalars.push_back({"supCoarse", Cell::number(res.sup.levels[0])});
  rec.scalars.push_back({"supMid", Cell::number(res.sup.levels[1])});
  rec.scalars.push_back({"supFine", Cell::number(res.sup.levels[2])});
  rec.verdicts.push_back({"ok", res.ok, 1e-12});
}

void run_sandwich(const ExperimentConfig& cfg, const Symbol& f,
                  ResultRecord& rec) {
  const double kTol = 1e-8;
  const SandwichCheck res =
      nonneg_sandwich_check(f, cfg.t, cfg.dim, cfg.degree, cfg.grid_extent,
                            cfg.grid_step, kTol);
  rec.scalars.push_back({"low", Cell::number(res.low)});
  rec.scalars.push_back({"mid", Cell::number(res.mid)});
  rec.scalars.push_back({"high", Cell::number(res.high)});
  rec.scalars.push_back({"twoTimeMin", Cell::number(res.two_time_min)});
  rec.verdicts.push_back({"ok", res.ok, kTol});
}

void run_localization(const ExperimentConfig& cfg, const Symbol& f,
                      ResultRecord& rec) {
  const FockParams p{cfg.dim, cfg.t};
  const TruncatedOperator T =
      toeplitz_matrix(f, p, cfg.degree, ToeplitzMethod::automatic,
                      cfg.quad_order);
  const RadialGrid grid{cfg.grid_extent, cfg.grid_step};
  const LocalizationProfile prof =
      localization_profile(T, grid, 0.5 * cfg.grid_extent);
  rec.columns = {"separation", "peak"};
  for (std::size_t i = 0; i < prof.separations.size(); ++i)
    rec.rows.push_back(
        {Cell::number(prof.separations[i]), Cell::number(prof.peaks[i])});
  rec.scalars.push_back({"fitC", Cell::number(prof.fit_c)});
  rec.scalars.push_back({"fitBeta", Cell::number(prof.fit_beta)});
  rec.scalars.push_back({"fitValid", Cell::boolean(prof.fit_valid)});
  rec.scalars.push_back({"weakSup", Cell::number(prof.weak_sup)});
  rec.scalars.push_back({"weakTail", Cell::number(prof.weak_tail)});
  rec.scalars.push_back({"tailRadius", Cell::number(prof.tail_radius)});
  rec.scalars.push_back({"weakComputed", Cell::boolean(prof.weak_computed)});
}

void run_tail(const ExperimentConfig& cfg, ResultRecord& rec) {
  const double kTol = 1e-12;
  const CPoint origin = radial_point(cfg.dim, 0.0);
  rec.columns = {"r", "exact", "bound", "ok"};
  bool all_ok = true;
  double max_ratio = 0.0;
  const int count =
      static_cast<int>(std::floor(cfg.grid_extent / cfg.grid_step + 1e-9));
  if (count < 1)
    throw PreconditionError("grid-step",
                            "the radius grid (0, extent] is empty");
  for (int k = 1; k <= count; ++k) {
    const double r = k * cfg.grid_step;
    const KernelTail kt = kernel_tail(origin, r, cfg.dim);
    all_ok = all_ok && kt.ok;
    if (kt.bound > 0.0) max_ratio = std::max(max_ratio, kt.exact / kt.bound);
    rec.rows.push_back({Cell::number(r), Cell::number(kt.exact),
                        Cell::number(kt.bound), Cell::boolean(kt.ok)});
  }
  rec.scalars.push_back({"maxRatio", Cell::number(max_ratio)});
  rec.verdicts.push_back({"ok", all_ok, kTol});
}

void run_phase_diagram(const ExperimentConfig& cfg, ResultRecord& rec) {
  // The parameter square is centered on 1 (the boundedness circles
  // |1 - t*lambda| = 1 and |1 - 2s*lambda| = 1 pass through 0 and 2/t,
  // 1/s), so extent 2 with step 0.02 reproduces the canonical
  // [-1,3] x [-1,3] picture at 201 x 201 points.
  const double lo = 1.0 - cfg.grid_extent;
  const int count = lattice_count(lo, 1.0 + cfg.grid_extent, cfg.grid_step);
  if (static_cast<double>(count) * count > 2e6)
    throw NumericRefusal("phase diagram grid exceeds 2e6 points",
                         "enlarge grid-step or shrink grid-extent");
  const std::vector<double> axis = lattice(lo, cfg.grid_step, count);
  rec.columns = {"reLambda", "imLambda", "operatorBounded", "heatBounded"};
  long agree = 0;
  for (double im : axis) {
    for (double re : axis) {
      const cplx lambda{re, im};
      const bool op_ok = std::abs(1.0 - cfg.t * lambda) >= 1.0;
      const bool heat_ok = std::abs(1.0 - (2.0 * cfg.s) * lambda) >= 1.0;
      if (op_ok == heat_ok) ++agree;
      rec.rows.push_back({Cell::number(re), Cell::number(im),
                          Cell::boolean(op_ok), Cell::boolean(heat_ok)});
    }
  }
  const long total = static_cast<long>(count) * count;
  rec.scalars.push_back({"agreeCount", Cell::number(static_cast<double>(agree))});
  rec.scalars.push_back({"totalCount", Cell::number(static_cast<double>(total))});
  // Exact boolean comparison: the tolerance in play is zero.
  rec.verdicts.push_back({"coincide", agree == total, 0.0});
}

void run_pbdop(const ExperimentConfig& cfg, const Symbol& f,
               ResultRecord& rec) {
  if (!std::isfinite(f.sup_abs()))
    throw PreconditionError("symbol",
                            "the band multiplier must be bounded");
  BandKernelOperator B;
  B.omega = cfg.s;
  B.phi = [](cplx) { return cplx{1.0, 0.0}; };  // hard band: phi = 1 on the disc
  B.phi_sup = 1.0;
  const Symbol psi = f;
  B.psi = [psi](cplx v) { return psi.eval(CPoint{v}); };
  B.psi_sup = f.sup_abs();
  B.psi_support = f.compactly_supported()
                      ? f.support_radius()
                      : std::numeric_limits<double>::infinity();
  if (f.radial()) B.psi_cuts = f.radial_breakpoints();

  BandPairingOptions bopt;
  if (cfg.quad_order > 0) {
    bopt.outer_order = cfg.quad_order;
    bopt.inner_order = std::max(4, cfg.quad_order / 2);
  }
  const RadialGrid grid{cfg.grid_extent, cfg.grid_step};
  const PbdopProfile prof = pbdop_compression_profile(B, grid, bopt);
  rec.columns = {"separation", "peak"};
  for (std::size_t i = 0; i < prof.profile.separations.size(); ++i)
    rec.rows.push_back({Cell::number(prof.profile.separations[i]),
                        Cell::number(prof.profile.peaks[i])});
  rec.scalars.push_back({"omega", Cell::number(B.omega)});
  rec.scalars.push_back({"envelopeScale", Cell::number(prof.envelope_scale)});
  rec.scalars.push_back(
      {"shortRangeBound", Cell::number(prof.short_range_bound)});
  rec.scalars.push_back({"fitC", Cell::number(prof.profile.fit_c)});
  rec.scalars.push_back({"fitBeta", Cell::number(prof.profile.fit_beta)});
  rec.scalars.push_back({"fitValid", Cell::boolean(prof.profile.fit_valid)});
  rec.verdicts.push_back({"envelopeOk", prof.envelope_ok, 0.10});
  rec.verdicts.push_back({"shortRangeOk", prof.short_range_ok, 1e-9});
}

}  // namespace

ResultRecord run_experiment(const ExperimentConfig& cfg) {
  const auto started = std::chrono::steady_clock::now();
  cfg.validate();
  const Symbol f = parse_symbol(cfg.symbol_text);

  ResultRecord rec;
  rec.kind = experiment_kind_name(cfg.kind);
  rec.config = cfg;
  switch (cfg.kind) {
    case ExperimentKind::heat: run_heat(cfg, f, rec); break;
    case ExperimentKind::spectrum: run_spectrum(cfg, f, rec); break;
    case ExperimentKind::berezin_field: run_berezin_field(cfg, f, rec); break;
    case ExperimentKind::bc_bound: run_bc_bound(cfg, f, rec); break;
    case ExperimentKind::sandwich: run_sandwich(cfg, f, rec); break;
    case ExperimentKind::localization: run_localization(cfg, f, rec); break;
    case ExperimentKind::tail: run_tail(cfg, rec); break;
    case ExperimentKind::phase_diagram: run_phase_diagram(cfg, rec); break;
    case ExperimentKind::pbdop: run_pbdop(cfg, f, rec); break;
  }
  rec.duration_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  return rec;
}

std::string emit_csv(const ResultRecord& rec) {
  std::string out;
  if (!rec.rows.empty() || !rec.columns.empty()) {
    for (std::size_t j = 0; j < rec.columns.size(); ++j) {
      if (j) out += ',';
      out += csv_quote(rec.columns[j]);
    }
    out += '\n';
    for (const std::vector<Cell>& row : rec.rows) {
      for (std::size_t j = 0; j < row.size(); ++j) {
        if (j) out += ',';
        out += csv_cell(row[j]);
      }
      out += '\n';
    }
    return out;
  }
  // Scalar-only record: one header row of names, one row of values.
  std::vector<std::string> names;
  std::vector<std::string> values;
  for (const NamedScalar& sc : rec.scalars) {
    names.push_back(sc.name);
    values.push_back(csv_cell(sc.value));
  }
  for (const Verdict& v : rec.verdicts) {
    names.push_back(v.name);
    values.push_back(v.ok ? "true" : "false");
    names.push_back(v.name + "Tolerance");
    values.push_back(format_number17(v.tolerance));
  }
  for (std::size_t j = 0; j < names.size(); ++j) {
    if (j) out += ',';
    out += csv_quote(names[j]);
  }
  out += '\n';
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (j) out += ',';
    out += values[j];
  }
  out += '\n';
  return out;
}

std::string emit_json(const ResultRecord& rec) {
  std::string out = "{\n";
  out += "  \"schema\": " + json_string(rec.schema) + ",\n";
  out += "  \"kind\": " + json_string(rec.kind) + ",\n";
  out += "  \"config\": " + config_echo_json(rec.config);
  for (const NamedScalar& sc : rec.scalars)
    out += ",\n  " + json_string(sc.name) + ": " + json_cell(sc.value);
  for (const Verdict& v : rec.verdicts) {
    out += ",\n  " + json_string(v.name) + ": " + (v.ok ? "true" : "false");
    out += ",\n  " + json_string(v.name + "Tolerance") + ": " +
           json_number(v.tolerance);
  }
  out += ",\n  \"columns\": [";
  for (std::size_t j = 0; j < rec.columns.size(); ++j) {
    if (j) out += ',';
    out += json_string(rec.columns[j]);
  }
  out += "],\n  \"rows\": [";
  for (std::size_t i = 0; i < rec.rows.size(); ++i) {
    out += i ? ",\n    [" : "\n    [";
    const std::vector<Cell>& row = rec.rows[i];
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (j) out += ',';
      out += json_cell(row[j]);
    }
    out += "]";
  }
  out += rec.rows.empty() ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

std::string emit(const ResultRecord& rec, const std::string& format) {
  if (format == "csv") return emit_csv(rec);
  if (format == "json") return emit_json(rec);
  throw PreconditionError("format", "format must be csv or json");
}

ExperimentConfig parse_config_echo(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw PreconditionError("config",
                            std::string("config echo is not valid JSON: ") +
                                e.what());
  }
  if (doc.contains("config")) doc = doc.at("config");
  if (!doc.is_object())
    throw PreconditionError("config", "config echo must be a JSON object");

  auto need = [&](const char* key) -> const nlohmann::json& {
    if (!doc.contains(key))
      throw PreconditionError(
          "config", std::string("config echo is missing field '") + key + "'");
    return doc.at(key);
  };
  auto as_number = [&](const char* key) -> double {
    const nlohmann::json& v = need(key);
    if (!v.is_number())
      throw PreconditionError(
          "config", std::string("config field '") + key + "' must be a number");
    return v.get<double>();
  };
  auto as_int = [&](const char* key) -> int {
    const nlohmann::json& v = need(key);
    if (!v.is_number_integer())
      throw PreconditionError(
          "config",
          std::string("config field '") + key + "' must be an integer");
    return v.get<int>();
  };
  auto as_string = [&](const char* key) -> std::string {
    const nlohmann::json& v = need(key);
    if (!v.is_string())
      throw PreconditionError(
          "config", std::string("config field '") + key + "' must be a string");
    return v.get<std::string>();
  };

  ExperimentConfig cfg;
  cfg.kind = parse_experiment_kind(as_string("experiment"));
  cfg.symbol_text = as_string("symbol");
  cfg.t = as_number("t");
  cfg.s = as_number("s");
  cfg.dim = as_int("dim");
  cfg.degree = as_int("degree");
  cfg.grid_extent = as_number("gridExtent");
  cfg.grid_step = as_number("gridStep");
  cfg.quad_order = as_int("quadOrder");
  cfg.validate();
  return cfg;
}

}  // namespace focklab

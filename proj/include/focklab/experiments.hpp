#pragma once

// Declarative experiment runner: a validated config selects one of the
// laboratory computations, the result is collected into a flat record
// (table + named scalars + tolerance verdicts), and the record is emitted
// as CSV or JSON.  Emission is byte-stable for a fixed config: no
// timestamps, no locale, no pointer values, and a fixed field order.  The
// wall-clock duration lives on the record for logging but is deliberately
// never serialized.

#include <string>
#include <vector>

#include "focklab/fock.hpp"

namespace focklab {

enum class ExperimentKind {
  heat,           // heat transform sampled along a radial ray
  spectrum,       // diagonal eigenvalues (radial) or compression spectrum
  berezin_field,  // Berezin transform of the truncated operator vs heat flow
  bc_bound,       // compression norm against the heat-sup bound C * sup
  sandwich,       // two-sided heat/norm sandwich for nonnegative symbols
  localization,   // off-diagonal decay profile of a Toeplitz compression
  tail,           // normalized kernel tail mass: exact vs Gaussian bound
  phase_diagram,  // boundedness predicates over a complex parameter grid
  pbdop,          // band kernel operator compression profile
};

ExperimentKind parse_experiment_kind(const std::string& name);
const char* experiment_kind_name(ExperimentKind kind);

// Mirrors the command-line surface one to one.  `s` doubles as the heat
// time (heat, berezin comparisons), the inner bound parameter (bc-bound,
// phase-diagram), and the band width omega (pbdop).  `quad_order` of 0
// leaves each operation on its own default rule size.
struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::heat;
  std::string symbol_text = "constant:v=1";
  double t = 1.0;
  double s = 0.25;
  int dim = 1;
  int degree = 20;
  double grid_extent = 4.0;
  double grid_step = 0.25;
  int quad_order = 0;
  std::string out_path;        // empty = standard output (CLI concern)
  std::string format = "csv";  // "csv" | "json"

  // Cheap structural checks with CLI flag names in the error field; the
  // dispatched operation re-validates its own mathematical preconditions.
  void validate() const;
};

// One table entry.  Numbers carry doubles (integers included), booleans are
// emitted as bare true/false, text is RFC-4180 quoted in CSV.
struct Cell {
  enum class Type { number, boolean, text };
  Type type = Type::number;
  double num = 0.0;
  bool flag = false;
  std::string text;

  static Cell number(double v);
  static Cell boolean(bool v);
  static Cell str(std::string v);
};

struct NamedScalar {
  std::string name;
  Cell value;
};

// A tolerance-carrying boolean claim; the tolerance that produced `ok` is
// always serialized next to it (field "<name>Tolerance").
struct Verdict {
  std::string name;
  bool ok = false;
  double tolerance = 0.0;
};

struct ResultRecord {
  std::string schema = "focklab.result/1";
  std::string kind;
  ExperimentConfig config;  // inputs echoed
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<NamedScalar> scalars;
  std::vector<Verdict> verdicts;
  double duration_seconds = 0.0;  // set by the caller; never emitted
};

// Dispatches to the module operation for `cfg.kind`.  Deterministic given
// the config: grid points are generated from closed-form indices (never by
// accumulation) and assembly is sequential in grid order.
ResultRecord run_experiment(const ExperimentConfig& cfg);

// CSV: header row + one row per sample point, RFC-4180 quoting, LF line
// ends.  Records without a table emit their scalars and verdicts as a
// single-row table instead.  All tabulated quantities are dimensionless;
// lengths are measured in the same scale as the kernel parameter t.
std::string emit_csv(const ResultRecord& rec);

// JSON: a single schema-tagged object.  Scalars and verdicts are hoisted to
// top-level fields (e.g. "lhsNorm", "ok", "okTolerance"); the table rides
// under "columns"/"rows".  Numbers are decimal with 17 significant digits.
std::string emit_json(const ResultRecord& rec);

// format must be "csv" or "json".
std::string emit(const ResultRecord& rec, const std::string& format);

// Decimal significand of up to 17 digits; round-trips every finite double.
std::string format_number17(double v);

// Reads the "config" object of an emitted JSON record (or a bare config
// object) back into an ExperimentConfig.  Output routing fields (out path,
// format) are not part of the echo and come back at their defaults.
ExperimentConfig parse_config_echo(const std::string& json_text);

}  // namespace focklab

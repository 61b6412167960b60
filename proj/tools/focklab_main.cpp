// Command-line front end: one experiment per invocation, CSV/JSON on stdout
// or into --out, machine-readable error JSON on stderr.  Exit codes:
//   0  success
//   2  precondition violated (bad flag value, bad symbol, unwritable path)
//   3  numerical refusal (a tolerance or budget cannot be met as configured)

#include <cstdio>
#include <string>

#include "CLI11.hpp"

#include "focklab/errors.hpp"
#include "focklab/experiments.hpp"

namespace {

std::string json_escaped(const std::string& s) {
  std::string out = "\"";
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
  out += "\"";
  return out;
}

void report_error(const char* kind, const std::string& field,
                  const std::string& message, const std::string& hint) {
  std::string line = "{\"error\":";
  line += json_escaped(kind);
  if (!field.empty()) line += ",\"field\":" + json_escaped(field);
  line += ",\"message\":" + json_escaped(message);
  if (!hint.empty()) line += ",\"hint\":" + json_escaped(hint);
  line += "}\n";
  std::fputs(line.c_str(), stderr);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace focklab;

  CLI::App app{
      "focklab: numerical laboratory for Toeplitz operators on "
      "Gaussian-weighted entire-function spaces"};

  std::string experiment = "heat";
  ExperimentConfig cfg;

  app.add_option("--experiment", experiment,
                 "heat | spectrum | berezin-field | bc-bound | sandwich | "
                 "localization | tail | phase-diagram | pbdop")
      ->capture_default_str();
  app.add_option("--symbol", cfg.symbol_text,
                 "symbol DSL, e.g. gaussian:lambda=2 or ball:radius=1")
      ->capture_default_str();
  app.add_option("--t", cfg.t, "space parameter t > 0")->capture_default_str();
  app.add_option("--s", cfg.s,
                 "auxiliary time: heat time, bound parameter, or band width")
      ->capture_default_str();
  app.add_option("--dim", cfg.dim, "complex dimension n")
      ->capture_default_str();
  app.add_option("--degree", cfg.degree, "truncation degree D")
      ->capture_default_str();
  app.add_option("--grid-extent", cfg.grid_extent, "sampling grid reach")
      ->capture_default_str();
  app.add_option("--grid-step", cfg.grid_step, "sampling grid spacing")
      ->capture_default_str();
  app.add_option("--quad-order", cfg.quad_order,
                 "quadrature order override (0 = per-operation default)")
      ->capture_default_str();
  app.add_option("--out", cfg.out_path,
                 "output path (default: standard output)");
  app.add_option("--format", cfg.format, "csv | json")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("precondition", "cli", e.what(), "");
    return 2;
  }

  try {
    cfg.kind = parse_experiment_kind(experiment);
    const ResultRecord rec = run_experiment(cfg);
    const std::string payload = emit(rec, cfg.format);

    if (cfg.out_path.empty()) {
      std::fwrite(payload.data(), 1, payload.size(), stdout);
      std::fflush(stdout);
    } else {
      std::FILE* fp = std::fopen(cfg.out_path.c_str(), "wb");
      if (!fp) {
        report_error("precondition", "out",
                     "cannot open output path: " + cfg.out_path, "");
        return 2;
      }
      const std::size_t written =
          std::fwrite(payload.data(), 1, payload.size(), fp);
      const bool closed = std::fclose(fp) == 0;
      if (written != payload.size() || !closed) {
        report_error("precondition", "out",
                     "short write to output path: " + cfg.out_path, "");
        return 2;
      }
    }
    // Duration goes to the log stream only; emitted bytes stay reproducible.
    std::fprintf(stderr, "focklab: %s finished in %.3f s\n", rec.kind.c_str(),
                 rec.duration_seconds);
    return 0;
  } catch (const PreconditionError& e) {
    report_error("precondition", e.field(), e.what(), "");
    return 2;
  } catch (const NumericRefusal& e) {
    report_error("numeric-refusal", "", e.what(), e.hint());
    return 3;
  }
}

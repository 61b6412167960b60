// End-to-end checks of the command-line binary: exit codes, stdout/stderr
// separation, machine-readable errors, and byte-stable output.  Run as
//   focklab_cli_check <path-to-focklab-binary>
// Prints one line per check and exits nonzero when any check fails.

#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

int g_failures = 0;

void check(bool ok, const std::string& name, const std::string& detail = "") {
  if (ok) {
    std::printf("ok - %s\n", name.c_str());
  } else {
    ++g_failures;
    std::printf("FAIL - %s%s%s\n", name.c_str(), detail.empty() ? "" : ": ",
                detail.c_str());
  }
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

RunResult run(const std::string& binary, const std::string& args,
              const std::string& scratch) {
  const std::string out_file = scratch + "/stdout.bin";
  const std::string err_file = scratch + "/stderr.bin";
  const std::string cmd = "\"" + binary + "\" " + args + " >\"" + out_file +
                          "\" 2>\"" + err_file + "\"";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_file);
  r.err = slurp(err_file);
  return r;
}

bool contains(const std::string& text, const std::string& needle) {
  return text.find(needle) != std::string::npos;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 2) {
    std::fprintf(stderr, "usage: %s <path-to-focklab-binary>\n", argv[0]);
    return 2;
  }
  const std::string binary = argv[1];

  char scratch_template[] = "/tmp/focklab-cli-XXXXXX";
  const char* scratch_dir = mkdtemp(scratch_template);
  if (scratch_dir == nullptr) {
    std::fprintf(stderr, "could not create a scratch directory\n");
    return 2;
  }
  const std::string scratch = scratch_dir;

  const std::string tail_args =
      "--experiment tail --grid-extent 0.5 --grid-step 0.25";
  const std::string golden =
      "r,exact,bound,ok\n"
      "0.25,0.96923323447634413,0.96923323447634413,true\n"
      "0.5,0.88249690258459546,0.88249690258459546,true\n";

  // Successful run: golden bytes on stdout, timing note on stderr only.
  const RunResult tail = run(binary, tail_args, scratch);
  check(tail.exit_code == 0, "tail run exits 0",
        "exit " + std::to_string(tail.exit_code));
  check(tail.out == golden, "tail run emits the frozen CSV bytes", tail.out);
  check(contains(tail.err, "finished in"), "duration note goes to stderr");
  check(!contains(tail.out, "finished"), "duration never contaminates stdout");

  // Re-run: byte-for-byte identical.
  const RunResult again = run(binary, tail_args, scratch);
  check(again.out == tail.out && again.exit_code == 0,
        "re-run reproduces stdout byte for byte");

  // --out writes exactly the stdout bytes.
  const std::string out_path = scratch + "/tail.csv";
  const RunResult to_file =
      run(binary, tail_args + " --out \"" + out_path + "\"", scratch);
  check(to_file.exit_code == 0 && slurp(out_path) == golden,
        "--out writes the same bytes as stdout");
  check(to_file.out.empty(), "nothing goes to stdout when --out is set");

  // JSON format carries the schema tag and parses the same scalars.
  const RunResult js = run(binary, tail_args + " --format json", scratch);
  check(js.exit_code == 0 &&
            contains(js.out, "\"schema\": \"focklab.result/1\""),
        "json output is schema-tagged");
  check(!js.out.empty() && js.out.back() == '\n',
        "json output ends with a newline");

  // Config errors: exit 2 with a machine-readable report naming the field.
  const RunResult bad_t = run(binary, "--experiment tail --t 0", scratch);
  check(bad_t.exit_code == 2, "t = 0 exits 2",
        "exit " + std::to_string(bad_t.exit_code));
  check(contains(bad_t.err, "\"error\"") &&
            contains(bad_t.err, "precondition") &&
            contains(bad_t.err, "\"t\""),
        "t = 0 reports a precondition on field t");
  check(bad_t.out.empty(), "failed runs leave stdout empty");

  const RunResult bad_sym =
      run(binary, "--experiment heat --symbol \"mystery:v=1\"", scratch);
  check(bad_sym.exit_code == 2 && contains(bad_sym.err, "symbol"),
        "unknown symbol family exits 2 naming the symbol field");

  const RunResult bad_flag = run(binary, "--bogus 1", scratch);
  check(bad_flag.exit_code == 2, "unknown flag exits 2",
        "exit " + std::to_string(bad_flag.exit_code));

  // Numeric refusal: exit 3 with a hint.
  const RunResult refusal = run(
      binary,
      "--experiment localization --degree 8 --grid-extent 6 --grid-step 0.5",
      scratch);
  check(refusal.exit_code == 3, "out-of-reach localization exits 3",
        "exit " + std::to_string(refusal.exit_code));
  check(contains(refusal.err, "numeric-refusal") &&
            contains(refusal.err, "hint"),
        "refusal report carries a hint");

  // Unwritable output path: exit 2, error names the path field.
  const RunResult bad_out = run(
      binary, tail_args + " --out /nonexistent-dir/result.csv", scratch);
  check(bad_out.exit_code == 2 && contains(bad_out.err, "out"),
        "unwritable output path exits 2 naming the out field");

  // Help is a success path.
  const RunResult help = run(binary, "--help", scratch);
  check(help.exit_code == 0 && contains(help.out, "--experiment"),
        "--help exits 0 and documents the flags");

  if (g_failures == 0) {
    std::printf("all cli checks passed\n");
    return 0;
  }
  std::printf("%d cli check(s) failed\n", g_failures);
  return 1;
}

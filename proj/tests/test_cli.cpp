#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "blochlu/cli.hpp"
#include "blochlu/io.hpp"
#include "blochlu/qstate.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace blochlu;
using namespace blochlu::testutil;

namespace {

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

int count_lines(const std::string& text) {
  int n = 0;
  for (char c : text)
    if (c == '\n') ++n;
  return n;
}

// Per-process scratch directory with the state files the cases share.
const std::filesystem::path& scratch() {
  static const std::filesystem::path dir = [] {
    auto d = std::filesystem::temp_directory_path() / "blochlu_cli_tests";
    std::filesystem::create_directories(d);
    write_state_file((d / "bell.json").string(), bell_phi_plus());
    write_state_file((d / "zz.json").string(),
                     pure_state_density(basis_state(2, 0)));
    write_state_file((d / "oz.json").string(),
                     pure_state_density(basis_state(2, 2)));
    return d;
  }();
  return dir;
}

std::string file(const char* name) { return (scratch() / name).string(); }

}  // namespace

TEST_CASE("invariants command prints the twelve entries") {
  CliRun r = cli({"invariants", file("bell.json")});
  CHECK(r.code == 0);
  CHECK(r.out.find("scheme: TwoQubit12") != std::string::npos);
  CHECK(r.out.find("entries: 12") != std::string::npos);
  CHECK(r.out.find("<T1,T1> = 0") != std::string::npos);
  CHECK(r.out.find("tr(T12 T12')^1 = 0.1875") != std::string::npos);
  CHECK(r.err.empty());
}

TEST_CASE("invariants rejects a scheme of the wrong arity") {
  CliRun r = cli({"invariants", file("bell.json"), "--scheme", "90"});
  CHECK(r.code == 3);
  CHECK(r.err.find("error:") != std::string::npos);
}

TEST_CASE("extract emits the tensor document") {
  CliRun r = cli({"extract", file("bell.json")});
  CHECK(r.code == 0);
  CHECK(r.out.find("\"T12\"") != std::string::npos);
  BlochTensors t = parse_tensors_json(r.out);
  CHECK(t.n_qubits == 2);
  CHECK(t.pair(1, 2)(0, 0) == doctest::Approx(0.25));
}

TEST_CASE("compare exit codes follow the verdict") {
  CliRun eq = cli({"compare", file("bell.json"), file("bell.json")});
  CHECK(eq.code == 0);
  CHECK(eq.out.find("verdict: Equivalent") != std::string::npos);

  CliRun ne = cli({"compare", file("zz.json"), file("bell.json")});
  CHECK(ne.code == 1);
  CHECK(ne.out.find("verdict: Inequivalent") != std::string::npos);
  CHECK(ne.out.find("separating: <T1,T1>") != std::string::npos);

  CliRun inc = cli({"compare", file("zz.json"), file("oz.json")});
  CHECK(inc.code == 2);
  CHECK(inc.out.find("verdict: Inconclusive") != std::string::npos);
}

TEST_CASE("random, apply, and compare round-trip through files") {
  std::string a = file("rand_a.json");
  std::string b = file("rand_b.json");
  CHECK(cli({"random", "--qubits", "2", "--seed", "31", "--out", a}).code ==
        0);
  CliRun ap = cli({"apply", a, "--seed", "32", "--out", b});
  CHECK(ap.code == 0);
  CHECK(ap.out.find(".unitary.json") != std::string::npos);

  CliRun cmp = cli({"compare", a, b, "--witness"});
  CHECK(cmp.code == 0);
  CHECK(cmp.out.find("\"factors\"") != std::string::npos);

  // Replaying the recorded unitary reproduces the state bit for bit.
  std::string c = file("rand_c.json");
  CHECK(cli({"apply", a, "--unitary", b + ".unitary.json", "--out", c})
            .code == 0);
  CHECK(max_abs_diff(read_state_file(b).matrix, read_state_file(c).matrix) ==
        0.0);
}

TEST_CASE("random honors the rank option") {
  std::string p = file("rank1.json");
  CHECK(cli({"random", "--qubits", "3", "--rank", "1", "--seed", "4", "--out",
             p}).code == 0);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(read_state_file(p).matrix);
  int positive = 0;
  for (Eigen::Index i = 0; i < 8; ++i)
    if (es.eigenvalues()(i) > 1e-10) ++positive;
  CHECK(positive == 1);
}

TEST_CASE("words lists families and checks admissibility") {
  CliRun summary = cli({"words", "--qubits", "2"});
  CHECK(summary.code == 0);
  CHECK(summary.out.find("O1: 6 words") != std::string::npos);

  CliRun fam = cli({"words", "--qubits", "2", "--family", "O1"});
  CHECK(fam.code == 0);
  CHECK(count_lines(fam.out) == 6);
  CHECK(fam.out.find("(T12 T12')^2 T12 T2") != std::string::npos);

  CliRun bad_fam = cli({"words", "--qubits", "2", "--family", "O9"});
  CHECK(bad_fam.code == 3);

  CliRun ok = cli({"words", "--qubits", "2", "--check", "T12 T21 T1"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("admissible: (T12 T12')^1 T1") != std::string::npos);

  CliRun no = cli({"words", "--qubits", "2", "--check", "T12 T12 T2"});
  CHECK(no.code == 0);
  CHECK(no.out.find("inadmissible:") != std::string::npos);

  CliRun ev = cli({"words", "--qubits", "2", "--eval", "T12 T2", "--state",
                   file("zz.json")});
  CHECK(ev.code == 0);
  CHECK(ev.out.find("0.0625") != std::string::npos);

  CHECK(cli({"words", "--qubits", "2", "--eval", "T1"}).code == 3);
}

TEST_CASE("selftest command") {
  CliRun zero = cli({"selftest", "--trials", "0"});
  CHECK(zero.code == 0);
  CHECK(zero.out.find("no trials") != std::string::npos);

  CliRun one = cli({"selftest", "--trials", "1", "--seed", "2"});
  CHECK(one.code == 0);
  CHECK(one.out.find("all suites passed") != std::string::npos);
}

TEST_CASE("seed falls back to the environment variable") {
  setenv("BLOCHLU_SEED", "777", 1);
  CliRun a = cli({"random", "--qubits", "2"});
  CliRun b = cli({"random", "--qubits", "2"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);

  CliRun forced = cli({"random", "--qubits", "2", "--seed", "778"});
  CHECK(forced.out != a.out);

  setenv("BLOCHLU_SEED", "not-a-number", 1);
  CHECK(cli({"random", "--qubits", "2"}).code == 3);
  unsetenv("BLOCHLU_SEED");
}

TEST_CASE("errors and usage problems exit with 3") {
  CliRun missing = cli({"invariants", file("no_such_file.json")});
  CHECK(missing.code == 3);
  CHECK(missing.err.find("error:") != std::string::npos);

  CHECK(cli({}).code == 3);                       // subcommand required
  CHECK(cli({"frobnicate"}).code == 3);           // unknown subcommand
  CHECK(cli({"random", "--qubits"}).code == 3);   // missing value
  CHECK(cli({"random"}).code == 3);               // --qubits required
}

TEST_CASE("help and version exit cleanly") {
  CHECK(cli({"--help"}).code == 0);
  CliRun v = cli({"--version"});
  CHECK(v.code == 0);
  CHECK(v.out.find("0.1.0") != std::string::npos);
}

TEST_CASE("malformed state files are reported as errors") {
  std::string p = file("broken.json");
  write_text_file(p, "{\"n_qubits\": 2}");
  CliRun r = cli({"invariants", p});
  CHECK(r.code == 3);
  CHECK(r.err.find("error:") != std::string::npos);
}

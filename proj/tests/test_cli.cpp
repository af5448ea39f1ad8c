#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "flg/errors.hpp"
#include "flg/io.hpp"
#include "support.hpp"

using namespace flg;

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

std::string cli_path() {
  const char* path = std::getenv("FLG_CLI");
  REQUIRE_MESSAGE(path != nullptr, "FLG_CLI must point at the binary");
  return path;
}

RunResult run_cli(const std::string& args, const std::string& stdin_data = "") {
  std::string command = cli_path() + " " + args + " 2>/dev/null";
  std::string stdin_file;
  if (!stdin_data.empty()) {
    stdin_file = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR")
                                                   : "/tmp") +
                 "/flg_cli_stdin.txt";
    std::ofstream out(stdin_file);
    out << stdin_data;
    out.close();
    command += " < " + stdin_file;
  }
  std::array<char, 4096> buffer;
  std::string output;
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  while (std::size_t got = std::fread(buffer.data(), 1, buffer.size(), pipe))
    output.append(buffer.data(), got);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), output};
}

}  // namespace

TEST_SUITE_BEGIN("cli");

TEST_CASE("generated instances parse back") {
  RunResult gen = run_cli("gen --family fig8 --k 3");
  CHECK(gen.exit_code == 0);
  Instance inst = parse_instance(gen.output);
  CHECK(inst.graph.vertex_count() == 6);
  CHECK(inst.k == 3);
  CHECK(inst.unrestricted());
}

TEST_CASE("piped instances feed the placement commands") {
  RunResult gen = run_cli("gen --family fig3");
  RunResult classes = run_cli("classes --place f1,f2,f3 -", gen.output);
  CHECK(classes.exit_code == 0);
  CHECK(classes.output.find("\"class_1_load\": \"5/2\"") != std::string::npos);
  CHECK(classes.output.find("\"class_2_load\": \"4/1\"") != std::string::npos);
}

TEST_CASE("json and tsv carry identical exact values") {
  RunResult gen = run_cli("gen --family fig5_left");
  RunResult json = run_cli("greedy --place w1,w2 -", gen.output);
  RunResult tsv = run_cli("greedy --place w1,w2 --format tsv -", gen.output);
  CHECK(json.exit_code == 0);
  CHECK(tsv.exit_code == 0);
  CHECK(json.output.find("\"3/1\"") != std::string::npos);
  CHECK(tsv.output.find("loads\t3/1\t2/1") != std::string::npos);
}

TEST_CASE("outputs are byte-for-byte deterministic") {
  RunResult first = run_cli("gen --family random --n 7 --k 2 --seed 42 --weighted");
  RunResult second =
      run_cli("gen --family random --n 7 --k 2 --seed 42 --weighted");
  CHECK(first.output == second.output);
  RunResult other = run_cli("gen --family random --n 7 --k 2 --seed 43 --weighted");
  CHECK(first.output != other.output);

  RunResult fig8 = run_cli("gen --family fig8 --k 2");
  CHECK(run_cli("find-spe -", fig8.output).output ==
        run_cli("find-spe -", fig8.output).output);
}

TEST_CASE("the exact search reports the counterexample as unstabilizable") {
  RunResult gen = run_cli("gen --family fig5_left");
  RunResult exists = run_cli("spe-exists --alpha 1 -", gen.output);
  CHECK(exists.exit_code == 1);
  CHECK(exists.output.find("\"verdict\": \"none\"") != std::string::npos);
}

TEST_CASE("find-spe reports a verified placement") {
  RunResult gen = run_cli("gen --family fig8 --k 2");
  RunResult spe = run_cli("find-spe -", gen.output);
  CHECK(spe.exit_code == 0);
  CHECK(spe.output.find("\"verified\": \"ok\"") != std::string::npos);
}

TEST_CASE("verify distinguishes ok from violation via the exit code") {
  RunResult gen = run_cli("gen --family fig8 --k 3");
  RunResult ok = run_cli("verify --policy fig8 --alpha 1 -", gen.output);
  CHECK(ok.exit_code == 0);
  CHECK(ok.output.find("\"verdict\": \"ok\"") != std::string::npos);

  RunResult gadget = run_cli("gen --family fig5_right --epsilon 1/100");
  RunResult violation = run_cli(
      "verify --policy greedy --place v1,v5 --alpha 2/5+1/2*sqrt5 -",
      gadget.output);
  CHECK(violation.exit_code == 1);
  CHECK(violation.output.find("\"witness_target\": \"v2\"") !=
        std::string::npos);
}

TEST_CASE("k-approx and poa round-trip through the CLI") {
  RunResult gen = run_cli("gen --family fig5_right --epsilon 1/100");
  RunResult kapprox = run_cli("k-approx -", gen.output);
  CHECK(kapprox.exit_code == 0);
  CHECK(kapprox.output.find("\"verdict\": \"ok\"") != std::string::npos);

  RunResult fig8 = run_cli("gen --family fig8 --k 3");
  RunResult poa = run_cli("poa --policy fig8 -", fig8.output);
  CHECK(poa.exit_code == 0);
  CHECK(poa.output.find("\"ratio\": \"2/1\"") != std::string::npos);

  RunResult opt = run_cli("opt -", fig8.output);
  CHECK(opt.exit_code == 0);
  CHECK(opt.output.find("\"participation\": \"6/1\"") != std::string::npos);
}

TEST_CASE("reduce-sat consumes DIMACS and emits a parsable instance") {
  std::string dimacs = "c tiny satisfiable formula\np cnf 1 4\n1 0\n1 0\n1 0\n1 0\n";
  RunResult reduced = run_cli("reduce-sat --alpha 5/4 --epsilon 1/100", dimacs);
  CHECK(reduced.exit_code == 0);
  Instance inst = parse_instance(reduced.output);
  CHECK(inst.graph.vertex_count() == 14);
  CHECK(inst.k == 3);

  RunResult bad = run_cli("reduce-sat --alpha 5/4", "p cnf 1 2\n1 0\n1 0\n");
  CHECK(bad.exit_code == 2);
}

TEST_CASE("dot output renders the host graph") {
  RunResult dot = run_cli("gen --family fig3 --dot");
  CHECK(dot.exit_code == 0);
  CHECK(dot.output.find("digraph") != std::string::npos);
  RunResult classes_dot = run_cli("classes --place f1,f2,f3 --dot -",
                                  run_cli("gen --family fig3").output);
  CHECK(classes_dot.output.find("class: C1") != std::string::npos);
}

TEST_CASE("reference checks run through the CLI surface") {
  RunResult fig3 = run_cli("paper-check fig3");
  CHECK(fig3.exit_code == 0);
  CHECK(fig3.output.find("all comparisons equal") != std::string::npos);
  RunResult table1 = run_cli("paper-check table1");
  CHECK(table1.exit_code == 0);
  RunResult unknown = run_cli("paper-check bogus");
  CHECK(unknown.exit_code == 2);
}

TEST_CASE("usage errors exit with code two") {
  CHECK(run_cli("no-such-command").exit_code == 2);
  CHECK(run_cli("classes").exit_code == 2);  // missing --place and instance
  RunResult gen = run_cli("gen --family fig5_left");
  CHECK(run_cli("classes --place nope,w2 -", gen.output).exit_code == 2);
  CHECK(run_cli("gen --family nope").exit_code == 2);
  CHECK(run_cli("spe-exists --alpha 1/2 -", gen.output).exit_code == 2);
}

TEST_SUITE_END();

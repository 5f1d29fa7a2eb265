#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "defect/cli.hpp"
#include "defect/input.hpp"

using namespace defect;
using cli::run;

namespace {

bool has_line(const std::string& text, const std::string& line) {
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);)
    if (l == line) return true;
  return false;
}

std::string write_temp(const std::string& name, const std::string& body) {
  auto path = std::filesystem::temp_directory_path() / ("defect_test_" + name);
  std::ofstream(path) << body;
  return path.string();
}

const char* kWorkspace = R"(# comment line
group A
gens 2
rels
4 0
0 6
end

group Z
gens 1
end

morphism two : Z -> Z
matrix
2
end

tower zp
pattern mult 2
end
)";

}  // namespace

TEST_CASE("value commands") {
  const std::string ws = write_temp("ws.txt", kWorkspace);
  auto r = run({"-f", ws, "invariants", "A"});
  CHECK(r.exit_code == cli::kComputed);
  CHECK(has_line(r.out, "invariant_factors: 0, [2,12]"));
  CHECK(has_line(r.out, "order: 24"));

  r = run({"hom", "Z/4", "Z/6"});
  CHECK(has_line(r.out, "invariant_factors: 0, [2]"));
  r = run({"ext", "Z/4", "Z/6"});
  CHECK(has_line(r.out, "invariant_factors: 0, [2]"));
  r = run({"hom", "Z^2", "Z+Z/3"});
  CHECK(has_line(r.out, "invariant_factors: 2, [3,3]"));
  r = run({"-f", ws, "dev", "two", "Z"});
  CHECK(has_line(r.out, "invariant_factors: 0, [2]"));
  CHECK(has_line(r.out, "verdict: computed"));
}

TEST_CASE("snf reads a matrix file") {
  const std::string m = write_temp("m.txt", "2 4\n# skip\n\n6 8\n");
  auto r = run({"snf", m, "--verify-witness"});
  CHECK(r.exit_code == cli::kComputed);
  CHECK(has_line(r.out, "rank: 2"));
  CHECK(has_line(r.out, "cokernel.invariant_factors: 0, [2,4]"));
  CHECK(has_line(r.out, "witness_check: pass"));
}

TEST_CASE("worked examples and expectations") {
  auto r = run({"examples", "ex32", "--window", "4"});
  CHECK(r.exit_code == cli::kComputed);
  CHECK(has_line(r.out, "verdict: CertifiedNo"));
  CHECK(has_line(r.out, "certificate: divisibility"));
  CHECK(run({"examples", "ex32", "--window", "2", "--expect", "no"}).exit_code == cli::kComputed);
  CHECK(run({"examples", "ex32", "--window", "2", "--expect", "yes"}).exit_code == cli::kExpectationFailed);
  r = run({"examples", "ex42", "--prime", "3", "--verify-witness"});
  CHECK(has_line(r.out, "certificate: hom-vanishing"));
  CHECK(r.out.find("witness_check: fail") == std::string::npos);
  CHECK(run({"examples", "ex42", "--prime", "6"}).exit_code == cli::kInputError);
  r = run({"examples", "devp", "Z/12", "Z+Z/5"});
  CHECK(r.exit_code == cli::kComputed);
}

TEST_CASE("undetermined verdicts and --require-certified") {
  const std::string ws = write_temp("ws2.txt", kWorkspace);
  auto r = run({"-f", ws, "phi", "two", "zp", "--window", "3"});
  CHECK(r.exit_code == cli::kComputed);
  CHECK(has_line(r.out, "verdict: Undetermined"));
  r = run({"-f", ws, "--require-certified", "phi", "two", "zp", "--window", "3"});
  CHECK(r.exit_code == cli::kUndetermined);
}

TEST_CASE("input errors exit 2 with a location") {
  const std::string bad = write_temp("bad.txt", "group A\ngens 2\nrels\n4 x\nend\n");
  auto r = run({"-f", bad, "invariants", "A"});
  CHECK(r.exit_code == cli::kInputError);
  CHECK(r.err.find(bad + ":4:") != std::string::npos);

  const std::string ws = write_temp("ws3.txt", kWorkspace);
  CHECK(run({"-f", ws, "invariants", "B"}).exit_code == cli::kInputError);
  CHECK(run({"-f", "/nonexistent/file", "invariants", "A"}).exit_code == cli::kInputError);
  CHECK(run({"hom", "Z/4"}).exit_code == cli::kInputError);
  CHECK(run({"frobnicate"}).exit_code == cli::kInputError);
  CHECK(run({"oracle", "hom", "Z", "Z/2"}).exit_code == cli::kInputError);
}

TEST_CASE("reports are deterministic") {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"selftest", "--seed", "5"}, {"examples", "ex32", "--window", "3"}, {"hom", "Z/8+Z", "Z/12"}}) {
    auto a = run(args), b = run(args);
    CHECK(a.out == b.out);
    CHECK(a.exit_code == b.exit_code);
  }
}

TEST_CASE("parser") {
  std::istringstream in(kWorkspace);
  Workspace ws = parse_workspace(in, "mem");
  CHECK(ws.group("A").invariants() == Invariants{0, {2, 12}});
  CHECK(ws.morphism("two").matrix() == IntMatrix(1, 1, {Int(2)}));
  CHECK(ws.towers.count("zp") == 1);
  CHECK(ws.group("Z/2+Z/2+Z").invariants() == Invariants{1, {2, 2}});
  CHECK(ws.group("0").ngens() == 0);
  CHECK_THROWS_AS(ws.group("Q"), InputError);
  CHECK_THROWS_AS(ws.morphism("three"), UnknownName);

  std::istringstream wrong_rows("group Z\ngens 1\nend\nmorphism m : Z -> Z\nmatrix\n1\n2\nend\n");
  try {
    parse_workspace(wrong_rows, "mem");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() >= 4);
  }
  std::istringstream unterminated("group A\ngens 1\n");
  CHECK_THROWS_AS(parse_workspace(unterminated, "mem"), ParseError);
  CHECK(invariant_factors_string(Invariants{3, {}}) == "3, []");
}

// End-to-end tests of the roughproof binary: every subcommand, every exit
// code, and the round trips between prove/cutfree output and check input.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct CmdResult {
  int code = -1;
  std::string out;
};

CmdResult run_cli(const std::string& args) {
  const std::string cmd = std::string(RP_BIN_DIR) + "/roughproof " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CmdResult r;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

std::string data_path(const std::string& rel) {
  return std::string(RP_DATA_DIR) + "/" + rel;
}

std::string temp_file(const std::string& name) {
  return (fs::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("check: valid derivation, wrong calculus, unreadable file") {
  auto ok = run_cli("check " + data_path("golden/golden_t6.mtp") + " --calculus D.IA1");
  CHECK(ok.code == 0);
  CHECK(contains(ok.out, "RESULT: valid"));

  // the same file uses rules outside the weakest calculus
  auto weak = run_cli("check " + data_path("golden/golden_t8.mtp") + " --calculus D.TQBA");
  CHECK(weak.code == 1);
  CHECK(contains(weak.out, "RESULT: invalid"));
  CHECK(contains(weak.out, "proof path"));

  auto missing = run_cli("check /nonexistent.mtp --calculus D.IA1");
  CHECK(missing.code == 2);
  CHECK(contains(missing.out, "RESULT: error"));
}

TEST_CASE("prove: proved, exhausted, budget, and output re-checks") {
  const std::string out = temp_file("rp_cli_prove.mtp");
  auto proved = run_cli("prove '(seq (circI (boxI p)) p)' --calculus D.TQBA --depth 20 --out " + out);
  CHECK(proved.code == 0);
  CHECK(contains(proved.out, "RESULT: proved"));
  CHECK(contains(proved.out, "(rule "));

  auto recheck = run_cli("check " + out + " --calculus D.TQBA");
  CHECK(recheck.code == 0);
  CHECK(contains(recheck.out, "RESULT: valid"));
  fs::remove(out);

  auto exhausted = run_cli("prove '(seq p (circI (boxI p)))' --calculus D.TQBA --depth 8");
  CHECK(exhausted.code == 1);
  CHECK(contains(exhausted.out, "RESULT: exhausted"));

  auto budget = run_cli("prove '(seq p (circI (boxI p)))' --calculus D.TQBA --depth 20 --nodes 3");
  CHECK(budget.code == 1);
  CHECK(contains(budget.out, "RESULT: budget"));

  auto malformed = run_cli("prove '(seq p' --calculus D.TQBA");
  CHECK(malformed.code == 2);
  CHECK(contains(malformed.out, "RESULT: error"));

  // ill-sorted sequents are input errors, not logical failures
  auto illsorted = run_cli("prove '(seq p (boxI p))' --calculus D.TQBA");
  CHECK(illsorted.code == 2);
  CHECK(contains(illsorted.out, "RESULT: error"));
}

TEST_CASE("cutfree: corpus proof loses its cut and re-checks") {
  const std::string out = temp_file("rp_cli_cutfree.mtp");
  auto r = run_cli("cutfree " + data_path("corpus/tqba_cut_and.mtp") +
                   " --calculus D.TQBA --out " + out);
  CHECK(r.code == 0);
  CHECK(contains(r.out, "cuts: 1"));
  CHECK(contains(r.out, "trace: "));
  CHECK(contains(r.out, "RESULT: cutfree"));
  CHECK(!contains(r.out, "(rule Cut_D"));

  auto recheck = run_cli("check " + out + " --calculus D.TQBA");
  CHECK(recheck.code == 0);
  CHECK(contains(recheck.out, "RESULT: valid"));
  fs::remove(out);
}

TEST_CASE("translate: composite modalities unfold; parse errors exit 2") {
  auto r = run_cli("translate '(C (and p q))'");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "(circC (diamC (and p q)))"));
  CHECK(contains(r.out, "RESULT: ok"));

  auto bad = run_cli("translate '(K p)'");
  CHECK(bad.code == 2);
  CHECK(contains(bad.out, "RESULT: error"));
}

TEST_CASE("classify: class list, law violation, malformed file") {
  const std::string good = temp_file("rp_cli_good.alg");
  std::ofstream(good) << "alg v1\nn 2\nleq 11 01\nneg 1 0\nint 0 1\n";
  auto r = run_cli("classify " + good);
  CHECK(r.code == 0);
  CHECK(contains(r.out, "classes: tqBa tqBa5 IA1 IA2 IA3 pra"));
  CHECK(contains(r.out, "RESULT: ok"));
  fs::remove(good);

  const std::string bad = temp_file("rp_cli_bad.alg");
  std::ofstream(bad) << "alg v1\nn 2\nleq 11 01\nneg 0 1\nint 0 1\n";
  auto rb = run_cli("classify " + bad);
  CHECK(rb.code == 1);
  CHECK(contains(rb.out, "RESULT: invalid"));
  fs::remove(bad);

  const std::string garbled = temp_file("rp_cli_garbled.alg");
  std::ofstream(garbled) << "not an algebra\n";
  auto rg = run_cli("classify " + garbled);
  CHECK(rg.code == 2);
  CHECK(contains(rg.out, "RESULT: error"));
  fs::remove(garbled);
}

TEST_CASE("enumerate: stable counts, printing, unknown class") {
  auto r = run_cli("enumerate --size 4 --class ia2");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "count: 7"));

  auto p = run_cli("enumerate --size 3 --class tqba --print");
  CHECK(p.code == 0);
  CHECK(contains(p.out, "alg v1"));
  CHECK(contains(p.out, "count: 3"));

  auto bad = run_cli("enumerate --size 3 --class boolean");
  CHECK(bad.code == 2);
  CHECK(contains(bad.out, "RESULT: error"));
}

TEST_CASE("countermodel: found with class report, none for a theorem") {
  auto r = run_cli(
      "countermodel '(seq s-top (s-vee (circI (boxI p)) (neg (circI (boxI p)))))' "
      "--class htqba5 --size 4");
  CHECK(r.code == 0);
  CHECK(contains(r.out, "alg v1"));
  CHECK(contains(r.out, "atom p = "));
  CHECK(contains(r.out, "RESULT: countermodel"));
  CHECK(!contains(r.out, " IA1"));  // the witness must lie outside that class

  auto none = run_cli("countermodel '(seq (circI (boxI p)) p)' --class tqba --size 4");
  CHECK(none.code == 1);
  CHECK(contains(none.out, "RESULT: none"));
}

TEST_CASE("soundness: every calculus is sound at carrier 4") {
  for (const char* c : {"D.TQBA", "D.TQBA5", "D.IA1", "D.IA2", "D.IA3", "D.PRA"}) {
    auto r = run_cli(std::string("soundness --calculus ") + c + " --size 4");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "RESULT: sound"));
  }
}

TEST_CASE("regression: acceptance suite passes through the CLI") {
  auto r = run_cli("regression --data " + std::string(RP_DATA_DIR));
  CHECK(r.code == 0);
  for (int i = 1; i <= 7; ++i)
    CHECK(contains(r.out, "criterion " + std::to_string(i) + " "));
  CHECK(contains(r.out, "RESULT: pass"));
}

TEST_CASE("usage errors exit 2") {
  auto noargs = run_cli("");
  CHECK(noargs.code == 2);

  auto badsub = run_cli("frobnicate");
  CHECK(badsub.code == 2);

  auto badcalc = run_cli("soundness --calculus D.BOGUS --size 3");
  CHECK(badcalc.code == 2);
  CHECK(contains(badcalc.out, "RESULT: error"));
}

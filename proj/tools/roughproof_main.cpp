// roughproof — command-line front end.
//
// Subcommands: check, prove, cutfree, translate, classify, enumerate,
// countermodel, soundness, regression.  Reports are line-oriented and end
// with "RESULT: <verdict>".  Exit codes: 0 success, 1 logical failure
// (invalid proof, goal not proved, no countermodel, unsound rule, failed
// criterion), 2 usage or input errors.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "roughproof/acceptance.hpp"
#include "roughproof/algebra.hpp"
#include "roughproof/check.hpp"
#include "roughproof/cutelim.hpp"
#include "roughproof/parser.hpp"
#include "roughproof/rules.hpp"
#include "roughproof/search.hpp"
#include "roughproof/translate.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

rp::CalculusId need_calculus(const std::string& name) {
  if (auto c = rp::calculus_of_name(name)) return *c;
  throw CLI::ValidationError("--calculus",
                             "unknown calculus '" + name +
                                 "' (expected D.TQBA, D.TQBA5, D.IA1, D.IA2, D.IA3 or D.PRA)");
}

rp::AlgClass need_class(const std::string& name) {
  if (auto c = rp::alg_class_of_name(name)) return *c;
  throw CLI::ValidationError("--class",
                             "unknown algebra class '" + name +
                                 "' (expected tqba, tqba5, ia1, ia2, ia3 or pra, "
                                 "optionally prefixed with 'h')");
}

std::string class_list(uint8_t mask) {
  std::string out;
  for (rp::AlgClass c : {rp::AlgClass::tqBa, rp::AlgClass::tqBa5, rp::AlgClass::IA1,
                         rp::AlgClass::IA2, rp::AlgClass::IA3, rp::AlgClass::pra}) {
    if (!rp::has_class(mask, c)) continue;
    if (!out.empty()) out += ' ';
    out += rp::alg_class_name(c);
  }
  return out.empty() ? "none" : out;
}

void print_model(const rp::SingleAlgebra& a, const rp::Env& atoms) {
  std::cout << rp::render_alg(a);
  for (const auto& [name, value] : atoms)
    std::cout << "atom " << name << " = " << value << "\n";
}

// ---- subcommand bodies (return the process exit code) ----

int cmd_check(const std::string& file, const std::string& calc) {
  const rp::CalculusId c = need_calculus(calc);
  rp::ProofNode proof;
  try {
    proof = rp::parse_proof(read_file(file));
  } catch (const std::exception& e) {
    std::cout << "error: " << e.what() << "\n" << "RESULT: error\n";
    return kUsage;
  }
  std::cout << "rules: " << rp::calculus_name(c) << "\n"
            << "conclusion: " << rp::render(proof.concl) << "\n";
  if (auto err = rp::check_proof_error(c, proof)) {
    std::cout << "error: " << *err << "\n" << "RESULT: invalid\n";
    return kFail;
  }
  std::cout << "RESULT: valid\n";
  return kOk;
}

int cmd_prove(const std::string& goal, const std::string& calc, int depth,
              long long nodes, const std::string& out) {
  const rp::CalculusId c = need_calculus(calc);
  rp::Sequent s;
  try {
    s = rp::parse_sequent(goal);
  } catch (const std::exception& e) {
    std::cout << "error: " << e.what() << "\n" << "RESULT: error\n";
    return kUsage;
  }
  rp::SearchBudget budget;
  budget.max_depth = depth;
  budget.max_nodes = nodes;
  const rp::SearchResult r = rp::prove(c, s, budget);
  std::cout << "goal: " << rp::render(s) << "\n"
            << "nodes: " << r.stats.nodes << "\n"
            << "depth: " << r.stats.depth_reached << "\n";
  if (r.status == rp::SearchStatus::Proved) {
    const std::string text = rp::render_proof(*r.proof) + "\n";
    std::cout << text;
    if (!out.empty()) write_file(out, text);
    std::cout << "RESULT: proved\n";
    return kOk;
  }
  std::cout << "RESULT: "
            << (r.status == rp::SearchStatus::Exhausted ? "exhausted" : "budget")
            << "\n";
  return kFail;
}

int cmd_cutfree(const std::string& file, const std::string& calc, const std::string& out) {
  const rp::CalculusId c = need_calculus(calc);
  rp::ProofNode proof;
  try {
    proof = rp::parse_proof(read_file(file));
  } catch (const std::exception& e) {
    std::cout << "error: " << e.what() << "\n" << "RESULT: error\n";
    return kUsage;
  }
  if (auto err = rp::check_proof_error(c, proof)) {
    std::cout << "error: input does not check: " << *err << "\n" << "RESULT: invalid\n";
    return kFail;
  }
  std::cout << "cuts: " << rp::count_cuts(proof) << "\n";
  try {
    const rp::CutElimResult r = rp::eliminate_cuts(c, proof);
    for (const std::string& line : r.trace) std::cout << "trace: " << line << "\n";
    const std::string text = rp::render_proof(r.proof) + "\n";
    std::cout << text;
    if (!out.empty()) write_file(out, text);
    std::cout << "RESULT: cutfree\n";
    return kOk;
  } catch (const rp::StuckCut& e) {
    std::cout << "error: " << e.what() << "\n" << "RESULT: stuck\n";
    return kFail;
  }
}

int cmd_translate(const std::string& formula, const std::string& out) {
  rp::LTermPtr t;
  try {
    t = rp::parse_lterm(formula);
  } catch (const std::exception& e) {
    std::cout << "error: " << e.what() << "\n" << "RESULT: error\n";
    return kUsage;
  }
  const std::string text = rp::render(rp::t_translate(t)) + "\n";
  std::cout << "input: " << rp::render_lterm(t) << "\n" << text;
  if (!out.empty()) write_file(out, text);
  std::cout << "RESULT: ok\n";
  return kOk;
}

int cmd_classify(const std::string& file) {
  rp::SingleAlgebra a;
  try {
    a = rp::parse_alg(read_file(file));
  } catch (const std::exception& e) {
    std::cout << "error: " << e.what() << "\n" << "RESULT: error\n";
    return kUsage;
  }
  std::cout << "carrier: " << a.lat.n << "\n";
  if (auto err = rp::validate_single(a)) {
    std::cout << "error: " << *err << "\n" << "RESULT: invalid\n";
    return kFail;
  }
  std::cout << "classes: " << class_list(rp::classify(a)) << "\n" << "RESULT: ok\n";
  return kOk;
}

int cmd_enumerate(int size, const std::string& cls, int jobs, bool print) {
  rp::EnumOptions opt;
  opt.max_size = size;
  opt.cls = need_class(cls);
  opt.jobs = jobs;
  const auto algebras = rp::enumerate_algebras_cached(opt);
  if (print)
    for (const rp::SingleAlgebra& a : algebras) std::cout << rp::render_alg(a) << "\n";
  std::cout << "count: " << algebras.size() << "\n" << "RESULT: ok\n";
  return kOk;
}

int cmd_countermodel(const std::string& goal, const std::string& cls, int size, int jobs) {
  const rp::AlgClass c = need_class(cls);
  rp::Sequent s;
  try {
    s = rp::parse_sequent(goal);
  } catch (const std::exception& e) {
    std::cout << "error: " << e.what() << "\n" << "RESULT: error\n";
    return kUsage;
  }
  std::cout << "goal: " << rp::render(s) << "\n";
  const auto cm = rp::countermodel(s, c, size, jobs);
  if (!cm) {
    std::cout << "RESULT: none\n";
    return kFail;
  }
  print_model(cm->algebra, cm->atoms);
  std::cout << "classes: " << class_list(rp::classify(cm->algebra)) << "\n"
            << "RESULT: countermodel\n";
  return kOk;
}

int cmd_soundness(const std::string& calc, int size, int jobs) {
  const rp::CalculusId c = need_calculus(calc);
  const rp::SweepResult r = rp::soundness_sweep(c, size, jobs);
  std::cout << "rules: " << r.rules_checked << "\n"
            << "models: " << r.algebras << "\n"
            << "checks: " << r.checks << "\n";
  for (const std::string& v : r.violations) std::cout << "violation: " << v << "\n";
  std::cout << "RESULT: " << (r.violations.empty() ? "sound" : "unsound") << "\n";
  return r.violations.empty() ? kOk : kFail;
}

int cmd_regression(const std::string& data, int jobs) {
  bool all = true;
  for (const rp::CriterionResult& r : rp::run_acceptance(data, jobs)) {
    std::cout << rp::format_criterion(r) << "\n";
    all = all && r.pass;
  }
  std::cout << "RESULT: " << (all ? "pass" : "fail") << "\n";
  return all ? kOk : kFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-type display calculi for rough algebras"};
  app.require_subcommand(1);

  std::string file, calc, goal, cls, formula, out, data = "data";
  int depth = 40, size = 5, jobs = 0;
  long long nodes = 100000;
  bool print = false;

  auto* check = app.add_subcommand("check", "check a derivation file");
  check->add_option("file", file, "derivation (.mtp)")->required();
  check->add_option("--calculus", calc, "calculus name, e.g. D.IA1")->required();

  auto* prove = app.add_subcommand("prove", "search for a derivation of a sequent");
  prove->add_option("sequent", goal, "goal, e.g. \"(seq (circI (boxI p)) p)\"")->required();
  prove->add_option("--calculus", calc)->required();
  prove->add_option("--depth", depth, "branch depth limit");
  prove->add_option("--nodes", nodes, "total expansion limit");
  prove->add_option("--out", out, "also write the derivation here");

  auto* cutfree = app.add_subcommand("cutfree", "eliminate cuts from a derivation file");
  cutfree->add_option("file", file)->required();
  cutfree->add_option("--calculus", calc)->required();
  cutfree->add_option("--out", out, "also write the cut-free derivation here");

  auto* translate = app.add_subcommand("translate", "translate a one-sorted formula");
  translate->add_option("formula", formula, "e.g. \"(I (and p q))\"")->required();
  translate->add_option("--out", out, "also write the term here");

  auto* classify = app.add_subcommand("classify", "validate and classify an algebra file");
  classify->add_option("file", file, "algebra (.alg)")->required();

  auto* enumerate = app.add_subcommand("enumerate", "enumerate algebras of a class");
  enumerate->add_option("--size", size, "carrier bound")->required();
  enumerate->add_option("--class", cls, "tqba, tqba5, ia1, ia2, ia3 or pra")->required();
  enumerate->add_option("--jobs", jobs, "worker threads (0 = all)");
  enumerate->add_flag("--print", print, "print each algebra");

  auto* counter = app.add_subcommand("countermodel", "search for a falsifying model");
  counter->add_option("sequent", goal)->required();
  counter->add_option("--class", cls)->required();
  counter->add_option("--size", size, "carrier bound")->required();
  counter->add_option("--jobs", jobs);

  auto* soundness = app.add_subcommand("soundness", "check every rule on every model");
  soundness->add_option("--calculus", calc)->required();
  soundness->add_option("--size", size, "carrier bound")->required();
  soundness->add_option("--jobs", jobs);

  auto* regression = app.add_subcommand("regression", "run the full acceptance suite");
  regression->add_option("--data", data, "data directory (default: ./data)");
  regression->add_option("--jobs", jobs);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp" ||
        e.get_name() == "CallForVersion")
      return app.exit(e);
    app.exit(e);
    return kUsage;
  }

  try {
    if (check->parsed()) return cmd_check(file, calc);
    if (prove->parsed()) return cmd_prove(goal, calc, depth, nodes, out);
    if (cutfree->parsed()) return cmd_cutfree(file, calc, out);
    if (translate->parsed()) return cmd_translate(formula, out);
    if (classify->parsed()) return cmd_classify(file);
    if (enumerate->parsed()) return cmd_enumerate(size, cls, jobs, print);
    if (counter->parsed()) return cmd_countermodel(goal, cls, size, jobs);
    if (soundness->parsed()) return cmd_soundness(calc, size, jobs);
    if (regression->parsed()) return cmd_regression(data, jobs);
  } catch (const CLI::ValidationError& e) {
    std::cout << "error: " << e.what() << "\n" << "RESULT: error\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cout << "error: " << e.what() << "\n" << "RESULT: error\n";
    return kUsage;
  }
  return kUsage;
}

#include "roughproof/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "roughproof/algebra.hpp"
#include "roughproof/check.hpp"
#include "roughproof/cutelim.hpp"
#include "roughproof/parser.hpp"
#include "roughproof/rules.hpp"
#include "roughproof/search.hpp"
#include "roughproof/term.hpp"
#include "roughproof/translate.hpp"

namespace fs = std::filesystem;

namespace rp {
namespace {

using Clock = std::chrono::steady_clock;

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

std::string read_file(const fs::path& p) {
  std::ifstream in(p);
  if (!in) fail("cannot read " + p.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

const RegressionTarget& target_named(const std::string& name) {
  for (const RegressionTarget& t : regression_targets())
    if (t.name == name) return t;
  fail("no regression target named " + name);
}

CalculusId calculus_of_tag(const std::string& tag) {
  if (tag == "tqba") return CalculusId::TQBA;
  if (tag == "tqba5") return CalculusId::TQBA5;
  if (tag == "ia1") return CalculusId::IA1;
  if (tag == "ia2") return CalculusId::IA2;
  if (tag == "ia3") return CalculusId::IA3;
  if (tag == "pra") return CalculusId::PRA;
  fail("corpus file name does not start with a calculus tag: " + tag);
}

// ---------- 1. golden derivations ----------

std::string golden_derivations(const fs::path& data) {
  struct Entry {
    const char* file;
    CalculusId c;
    Sequent expect;
  };
  const std::vector<Entry> entries = {
      {"golden_t6.mtp", CalculusId::IA1, target_named("interior-complement").sequent},
      {"golden_t7_out.mtp", CalculusId::IA2, target_named("interior-join-out").sequent},
      {"golden_t7_in.mtp", CalculusId::IA2, target_named("interior-join-in").sequent},
      {"golden_t8.mtp", CalculusId::IA3, parse_sequent("(seq p p)")},
  };
  for (const Entry& e : entries) {
    const std::string text = read_file(data / "golden" / e.file);
    const ProofNode proof = parse_proof(text);
    check_proof(e.c, proof);
    if (!(proof.concl == e.expect))
      fail(std::string(e.file) + " ends in " + render(proof.concl) +
           ", expected " + render(e.expect));
    if (render_proof(proof) != text)
      fail(std::string(e.file) + " is not canonically rendered");
  }
  return "4 derivations parse, check, and are canonically rendered";
}

// ---------- 2. search regression ----------

std::string search_regression() {
  const SearchBudget budget{40, 100000};
  for (const RegressionTarget& t : regression_targets()) {
    const SearchResult sr = prove(t.calculus, t.sequent, budget);
    if (sr.status != SearchStatus::Proved || !sr.proof)
      fail(t.name + " was not proved within depth 40 / 100000 nodes");
    if (!(sr.proof->concl == t.sequent)) fail(t.name + ": proof of the wrong sequent");
    check_proof(t.calculus, *sr.proof);
  }
  return std::to_string(regression_targets().size()) +
         " bridge targets proved and re-checked (depth <= 40, nodes <= 100000)";
}

// ---------- 3. cut elimination over the corpus ----------

std::string cut_elimination(const fs::path& data) {
  std::vector<std::pair<fs::path, CalculusId>> files;
  files.emplace_back(data / "golden" / "golden_t8.mtp", CalculusId::IA3);

  std::vector<fs::path> corpus;
  for (const auto& entry : fs::directory_iterator(data / "corpus"))
    if (entry.path().extension() == ".mtp") corpus.push_back(entry.path());
  std::sort(corpus.begin(), corpus.end());
  for (const fs::path& p : corpus) {
    const std::string stem = p.stem().string();
    files.emplace_back(p, calculus_of_tag(stem.substr(0, stem.find('_'))));
  }

  int eliminated = 0;
  int cuts_removed = 0;
  for (const auto& [path, c] : files) {
    const ProofNode proof = parse_proof(read_file(path));
    check_proof(c, proof);
    const int cuts = count_cuts(proof);
    if (cuts < 1) fail(path.filename().string() + " carries no cut");
    const CutElimResult r = eliminate_cuts(c, proof);
    if (count_cuts(r.proof) != 0) fail(path.filename().string() + ": cuts remain");
    if (!(r.proof.concl == proof.concl))
      fail(path.filename().string() + ": end-sequent changed");
    check_proof(c, r.proof);
    if (!satisfies_subformula_property(r.proof))
      fail(path.filename().string() + ": subformula audit failed");
    ++eliminated;
    cuts_removed += cuts;
  }
  if (eliminated < 10) fail("corpus holds only " + std::to_string(eliminated) + " proofs");
  return std::to_string(eliminated) + " proofs eliminated (" +
         std::to_string(cuts_removed) + " cuts), all re-checked and audited";
}

// ---------- 4. soundness sweep ----------

std::string soundness_sweep_all(int jobs) {
  long long checks = 0;
  int pairs = 0;
  for (CalculusId c : {CalculusId::TQBA, CalculusId::TQBA5, CalculusId::IA1,
                       CalculusId::IA2, CalculusId::IA3, CalculusId::PRA}) {
    const SweepResult r = soundness_sweep(c, 5, jobs);
    if (!r.violations.empty())
      fail(calculus_name(c) + ": " + r.violations.front());
    checks += r.checks;
    pairs += r.algebras;
  }
  return "all rules valid on every model with carrier <= 5 (" +
         std::to_string(checks) + " rule/model checks)";
}

// ---------- 5. algebra oracles ----------

LTermPtr random_lterm(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> leaf(0, 4);
  std::uniform_int_distribution<int> pick(0, 7);
  if (depth == 0) {
    switch (leaf(rng)) {
      case 0: return latom("p");
      case 1: return latom("q");
      case 2: return latom("r");
      case 3: return lmk(LOp::Top);
      default: return lmk(LOp::Bot);
    }
  }
  switch (pick(rng)) {
    case 0: return lmk(LOp::Neg, {random_lterm(rng, depth - 1)});
    case 1: return lmk(LOp::I, {random_lterm(rng, depth - 1)});
    case 2: return lmk(LOp::C, {random_lterm(rng, depth - 1)});
    case 3:
    case 4:
      return lmk(LOp::And, {random_lterm(rng, depth - 1), random_lterm(rng, depth - 1)});
    case 5:
    case 6:
      return lmk(LOp::Or, {random_lterm(rng, depth - 1), random_lterm(rng, depth - 1)});
    default: return random_lterm(rng, 0);
  }
}

std::string algebra_oracles(int jobs) {
  EnumOptions base;
  base.max_size = 5;
  base.cls = AlgClass::tqBa;
  base.jobs = jobs;
  const auto algebras = enumerate_algebras_cached(base);

  // Interiors fix joins of opens: I(Ia v Ib) = Ia v Ib.
  for (const SingleAlgebra& a : algebras) {
    for (int x = 0; x < a.lat.n; ++x)
      for (int y = 0; y < a.lat.n; ++y) {
        const int u = a.lat.jn(a.intr[x], a.intr[y]);
        if (a.intr[u] != u) fail("a join of opens is not open");
      }
  }

  // Kernel maps: projections are surjective lattice quotients, embeddings
  // are injective lattice maps, and the composites agree with I and C.
  for (const SingleAlgebra& a : algebras) {
    const HetAlgebra h = to_heterogeneous(a);
    if (auto err = validate_het(h)) fail("derived presentation invalid: " + *err);
    if (classify_het(h) != classify(a)) fail("derived presentation classifies differently");

    std::set<int> imI, imC;
    for (int x = 0; x < a.lat.n; ++x) {
      imI.insert(h.iota[x]);
      imC.insert(h.gamma[x]);
    }
    if (static_cast<int>(imI.size()) != h.LI.n) fail("interior projection not surjective");
    if (static_cast<int>(imC.size()) != h.LC.n) fail("closure projection not surjective");

    for (int x = 0; x < a.lat.n; ++x)
      for (int y = 0; y < a.lat.n; ++y) {
        if (h.LI.mt(h.iota[x], h.iota[y]) != h.iota[a.lat.mt(x, y)])
          fail("interior projection misses a meet");
        if (h.LC.jn(h.gamma[x], h.gamma[y]) != h.gamma[a.lat.jn(x, y)])
          fail("closure projection misses a join");
      }
    if (h.iota[a.lat.top] != h.LI.top || h.iota[a.lat.bot] != h.LI.bot)
      fail("interior projection misses a bound");
    if (h.gamma[a.lat.top] != h.LC.top || h.gamma[a.lat.bot] != h.LC.bot)
      fail("closure projection misses a bound");

    for (int al = 0; al < h.LI.n; ++al)
      for (int be = 0; be < h.LI.n; ++be) {
        if (a.lat.mt(h.eI[al], h.eI[be]) != h.eI[h.LI.mt(al, be)] ||
            a.lat.jn(h.eI[al], h.eI[be]) != h.eI[h.LI.jn(al, be)])
          fail("interior embedding is not a lattice map");
      }
    for (int xi = 0; xi < h.LC.n; ++xi)
      for (int ch = 0; ch < h.LC.n; ++ch) {
        if (a.lat.mt(h.eC[xi], h.eC[ch]) != h.eC[h.LC.mt(xi, ch)] ||
            a.lat.jn(h.eC[xi], h.eC[ch]) != h.eC[h.LC.jn(xi, ch)])
          fail("closure embedding is not a lattice map");
      }
    if (h.eI[h.LI.top] != a.lat.top || h.eI[h.LI.bot] != a.lat.bot ||
        h.eC[h.LC.top] != a.lat.top || h.eC[h.LC.bot] != a.lat.bot)
      fail("an embedding misses a bound");
  }

  // Stable family: the comparison map γ∘e_I is an isomorphism of the two
  // kernels commuting with the kernel negation; the negation is De Morgan,
  // and it is a complement exactly on the complemented subclass.
  EnumOptions stable = base;
  stable.cls = AlgClass::tqBa5;
  for (const SingleAlgebra& a : enumerate_algebras_cached(stable)) {
    const HetAlgebra h = to_heterogeneous(a);
    if (!h.has_kernel_neg) fail("stable algebra lost its kernel negation");

    for (int al = 0; al < h.LI.n; ++al) {
      if (h.simI[h.simI[al]] != al) fail("kernel negation is not involutive");
      for (int be = 0; be < h.LI.n; ++be) {
        if (h.LI.le(al, be) && !h.LI.le(h.simI[be], h.simI[al]))
          fail("kernel negation is not order-reversing");
        if (h.simI[h.LI.mt(al, be)] != h.LI.jn(h.simI[al], h.simI[be]))
          fail("kernel negation misses a De Morgan law");
      }
    }

    std::vector<int> f(h.LI.n);
    std::set<int> image;
    for (int al = 0; al < h.LI.n; ++al) {
      f[al] = h.gamma[h.eI[al]];
      image.insert(f[al]);
    }
    if (static_cast<int>(image.size()) != h.LC.n || h.LI.n != h.LC.n)
      fail("kernel comparison map is not a bijection");
    if (f[h.LI.top] != h.LC.top || f[h.LI.bot] != h.LC.bot)
      fail("kernel comparison map misses a bound");
    for (int al = 0; al < h.LI.n; ++al) {
      if (f[h.simI[al]] != h.minusC[f[al]])
        fail("kernel comparison map does not commute with negation");
      for (int be = 0; be < h.LI.n; ++be)
        if (f[h.LI.mt(al, be)] != h.LC.mt(f[al], f[be]) ||
            f[h.LI.jn(al, be)] != h.LC.jn(f[al], f[be]))
          fail("kernel comparison map is not a lattice isomorphism");
    }

    bool complemented = true;
    for (int al = 0; al < h.LI.n; ++al)
      if (h.LI.jn(al, h.simI[al]) != h.LI.top || h.LI.mt(al, h.simI[al]) != h.LI.bot)
        complemented = false;
    if (complemented != has_class(classify(a), AlgClass::IA1))
      fail("kernel complement law disagrees with the classification");
  }

  // Round trips between the presentations, up to isomorphism.
  for (const SingleAlgebra& a : algebras) {
    const HetAlgebra h = to_heterogeneous(a);
    const SingleAlgebra back = to_single(h);
    if (!is_isomorphic(a, back)) fail("single-type round trip broke an algebra");
    if (!is_isomorphic_het(to_heterogeneous(back), h))
      fail("two-sorted round trip broke an algebra");
  }

  // Translation preserves evaluation on 200 random formulas per algebra.
  std::mt19937 rng(797003u);
  std::vector<LTermPtr> family;
  family.reserve(200);
  for (int i = 0; i < 200; ++i) family.push_back(random_lterm(rng, 4));

  long long evals = 0;
  for (const SingleAlgebra& a : algebras) {
    const HetAlgebra h = to_heterogeneous(a);
    for (const LTermPtr& t : family) {
      const TermPtr img = t_translate(t);
      for (int vp = 0; vp < a.lat.n; ++vp)
        for (int vq = 0; vq < a.lat.n; ++vq)
          for (int vr = 0; vr < a.lat.n; ++vr) {
            const Env env = {{"p", vp}, {"q", vq}, {"r", vr}};
            if (eval_lterm(a, t, env) != eval_term(h, img, env))
              fail("translation changed a value: " + render_lterm(t));
            ++evals;
          }
    }
  }

  return "identities, comparison isomorphisms, round trips, and " +
         std::to_string(evals) + " translated evaluations all exact on " +
         std::to_string(algebras.size()) + " models";
}

// ---------- 6. separation witnesses ----------

std::string separation_witnesses() {
  struct Sep {
    const char* target;
    AlgClass search_in;
    AlgClass must_lack;
  };
  const std::vector<Sep> seps = {
      {"interior-stable", AlgClass::tqBa, AlgClass::tqBa5},
      {"interior-complement", AlgClass::tqBa5, AlgClass::IA1},
      {"interior-join-out", AlgClass::tqBa5, AlgClass::IA2},
  };
  for (const Sep& s : seps) {
    const Sequent& seq = target_named(s.target).sequent;
    const auto cm = countermodel(seq, s.search_in, 5);
    if (!cm) fail(std::string(s.target) + ": no countermodel with carrier <= 5");
    const uint8_t mask = classify(cm->algebra);
    if (!has_class(mask, s.search_in) || has_class(mask, s.must_lack))
      fail(std::string(s.target) + ": witness does not separate the classes");
    if (seq_holds_under(to_heterogeneous(cm->algebra), seq, cm->atoms))
      fail(std::string(s.target) + ": witness does not falsify the sequent");
  }
  return "3 class separations witnessed by countermodels with carrier <= 5";
}

// ---------- 7. robustness ----------

struct OpPools {
  std::vector<Op> form[3], strc[3];
  OpPools() {
    for (int i = 0; i < kOpCount; ++i) {
      const Op op = static_cast<Op>(i);
      if (op == Op::Atom || op == Op::MetaVar) continue;
      const int s = static_cast<int>(op_result_sort(op));
      (op_is_operational(op) ? form[s] : strc[s]).push_back(op);
    }
  }
};

TermPtr random_formula(std::mt19937& rng, const OpPools& pools, Sort s, int depth);

TermPtr random_leaf(std::mt19937& rng, const OpPools& pools, Sort s) {
  if (s == Sort::D) {
    std::uniform_int_distribution<int> leaf(0, 4);
    switch (leaf(rng)) {
      case 0: return mk_atom("p");
      case 1: return mk_atom("q");
      case 2: return mk_atom("r");
      case 3: return mk(Op::Top);
      default: return mk(Op::Bot);
    }
  }
  std::vector<Op> nullary;
  for (Op op : pools.form[static_cast<int>(s)])
    if (op_arity(op) == 0) nullary.push_back(op);
  std::uniform_int_distribution<size_t> pick(0, nullary.size() - 1);
  return mk(nullary[pick(rng)]);
}

TermPtr random_formula(std::mt19937& rng, const OpPools& pools, Sort s, int depth) {
  if (depth == 0) return random_leaf(rng, pools, s);
  const auto& ops = pools.form[static_cast<int>(s)];
  std::uniform_int_distribution<size_t> pick(0, ops.size());
  const size_t k = pick(rng);
  if (k == ops.size()) return random_leaf(rng, pools, s);
  const Op op = ops[k];
  std::vector<TermPtr> kids;
  for (int i = 0; i < op_arity(op); ++i)
    kids.push_back(random_formula(rng, pools, op_child_sort(op, i), depth - 1));
  if (kids.empty() && op_arity(op) == 0) return mk(op);
  return mk(op, std::move(kids));
}

TermPtr random_structure(std::mt19937& rng, const OpPools& pools, Sort s, int depth) {
  std::uniform_int_distribution<int> coin(0, 3);
  if (depth == 0 || coin(rng) == 0) return random_formula(rng, pools, s, depth);
  const auto& ops = pools.strc[static_cast<int>(s)];
  std::uniform_int_distribution<size_t> pick(0, ops.size() - 1);
  const Op op = ops[pick(rng)];
  std::vector<TermPtr> kids;
  for (int i = 0; i < op_arity(op); ++i)
    kids.push_back(random_structure(rng, pools, op_child_sort(op, i), depth - 1));
  return mk(op, std::move(kids));
}

void collect_nodes(ProofNode& n, std::vector<ProofNode*>& out) {
  out.push_back(&n);
  for (ProofNode& k : n.kids) collect_nodes(k, out);
}

bool in_subtree(const ProofNode* root, const ProofNode* n) {
  if (root == n) return true;
  for (const ProofNode& k : root->kids)
    if (in_subtree(&k, n)) return true;
  return false;
}

std::string robustness(const fs::path& data) {
  // Part one: render/parse round trips on sort-correct random terms.
  const OpPools pools;
  std::mt19937 rng(20260814u);
  std::uniform_int_distribution<int> sort_pick(0, 2);
  std::uniform_int_distribution<int> kind(0, 1);
  for (int i = 0; i < 10000; ++i) {
    const Sort s = static_cast<Sort>(sort_pick(rng));
    const TermPtr t = kind(rng) ? random_structure(rng, pools, s, 5)
                                : random_formula(rng, pools, s, 5);
    ParseOptions opt;
    opt.expect = s;
    const TermPtr back = parse_term(render(t), opt);
    if (!term_eq(t, back)) fail("round trip changed a term: " + render(t));
  }

  // Part two: mutated derivations are rejected with a path-bearing error.
  struct Golden {
    ProofNode proof;
    CalculusId c;
    std::vector<std::string> names;  // rule names of the calculus
  };
  std::vector<Golden> goldens;
  const std::vector<std::pair<const char*, CalculusId>> files = {
      {"golden_t6.mtp", CalculusId::IA1},
      {"golden_t7_out.mtp", CalculusId::IA2},
      {"golden_t7_in.mtp", CalculusId::IA2},
      {"golden_t8.mtp", CalculusId::IA3},
  };
  for (const auto& [file, c] : files) {
    Golden g;
    g.proof = parse_proof(read_file(data / "golden" / file));
    g.c = c;
    std::set<std::string> names;
    for (const Rule* r : rule_set(c)) names.insert(r->name);
    g.names.assign(names.begin(), names.end());
    goldens.push_back(std::move(g));
  }

  int rejected = 0;
  int attempts = 0;
  const int want = 1000;
  std::uniform_int_distribution<size_t> which(0, goldens.size() - 1);
  while (rejected < want && attempts < 50 * want) {
    ++attempts;
    const Golden& g = goldens[which(rng)];
    ProofNode copy = g.proof;
    std::vector<ProofNode*> nodes;
    collect_nodes(copy, nodes);
    std::uniform_int_distribution<size_t> node_pick(0, nodes.size() - 1);
    if (kind(rng)) {
      // rename one node to another rule of the same calculus
      ProofNode* n = nodes[node_pick(rng)];
      std::uniform_int_distribution<size_t> name_pick(0, g.names.size() - 1);
      std::string fresh = g.names[name_pick(rng)];
      if (fresh == n->rule) continue;
      n->rule = std::move(fresh);
    } else {
      // swap two unrelated subtrees
      ProofNode* a = nodes[node_pick(rng)];
      ProofNode* b = nodes[node_pick(rng)];
      if (a == b || in_subtree(a, b) || in_subtree(b, a)) continue;
      std::swap(*a, *b);
    }
    try {
      check_proof(g.c, copy);
      // the mutation happened to produce another valid proof; not a rejection
    } catch (const ProofError&) {
      ++rejected;  // carries the node path by construction
    } catch (const std::exception&) {
      // rejected, but without a path: does not count towards the quota
    }
  }
  if (rejected < want)
    fail("only " + std::to_string(rejected) + " path-bearing rejections in " +
         std::to_string(attempts) + " attempts");
  return "10000 term round trips exact; " + std::to_string(want) +
         " mutated derivations rejected with node paths (" +
         std::to_string(attempts) + " mutations tried)";
}

CriterionResult run_one(int index, const char* name, double budget,
                        const std::function<std::string()>& body) {
  CriterionResult r;
  r.index = index;
  r.name = name;
  r.budget_seconds = budget;
  const auto t0 = Clock::now();
  try {
    r.detail = body();
    r.pass = true;
  } catch (const std::exception& e) {
    r.detail = e.what();
    r.pass = false;
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  if (r.pass && r.seconds > r.budget_seconds) {
    r.pass = false;
    r.detail += " — but exceeded the runtime budget";
  }
  return r;
}

}  // namespace

std::vector<CriterionResult> run_acceptance(const std::string& data_dir, int jobs) {
  const fs::path data(data_dir);
  std::vector<CriterionResult> out;
  out.push_back(run_one(1, "golden-derivations", 1.0,
                        [&] { return golden_derivations(data); }));
  out.push_back(run_one(2, "search-regression", 120.0, search_regression));
  out.push_back(run_one(3, "cut-elimination", 30.0,
                        [&] { return cut_elimination(data); }));
  out.push_back(run_one(4, "soundness-sweep", 600.0,
                        [&] { return soundness_sweep_all(jobs); }));
  out.push_back(run_one(5, "algebra-oracles", 300.0,
                        [&] { return algebra_oracles(jobs); }));
  out.push_back(run_one(6, "separation-witnesses", 120.0, separation_witnesses));
  out.push_back(run_one(7, "robustness", 60.0, [&] { return robustness(data); }));
  return out;
}

std::string format_criterion(const CriterionResult& r) {
  std::ostringstream os;
  os << "criterion " << r.index << " " << r.name << ": "
     << (r.pass ? "PASS" : "FAIL") << " (" << std::fixed;
  os.precision(2);
  os << r.seconds << "s / ";
  os.precision(0);
  os << r.budget_seconds << "s) " << r.detail;
  return os.str();
}

}  // namespace rp

// Regenerates the checked-in derivation files under data/.
//
//   goldengen [data-dir]     (default: data)
//
// data/golden/ holds one canonical derivation per file:
//   golden_t6.mtp      D.IA1   top |- oI.bI p v ~oI.bI p     (search-generated)
//   golden_t7_out.mtp  D.IA2   oI.bI(p v q) |- oI.bI p v oI.bI q   (search)
//   golden_t7_in.mtp   D.IA2   the converse direction        (hand-built)
//   golden_t8.mtp      D.IA3   p |- p via the two-premise reflection rule,
//                              closed with identity derivations and composed
//                              with four Cut_D applications
//
// data/corpus/ holds cut-bearing proofs for the elimination regression; the
// file name prefix up to the first '_' names the calculus (tqba, tqba5, ia1,
// ia2, ia3, pra). Every file in the corpus contains at least one cut.
//
// Everything written here is validated with check_proof before it lands on
// disk, and the render/parse round trip is asserted so the files stay
// canonical.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "roughproof/check.hpp"
#include "roughproof/cutelim.hpp"
#include "roughproof/parser.hpp"
#include "roughproof/rules.hpp"
#include "roughproof/search.hpp"
#include "roughproof/term.hpp"
#include "roughproof/translate.hpp"

namespace fs = std::filesystem;
using namespace rp;

namespace {

ProofNode node(std::string rule, const std::string& concl,
               std::vector<ProofNode> kids = {}) {
  return ProofNode{std::move(rule), parse_sequent(concl), std::move(kids)};
}

ProofNode checked(CalculusId c, ProofNode p, const std::string& what) {
  check_proof(c, p);
  ProofNode back = parse_proof(render_proof(p));
  if (!(back.concl == p.concl)) {
    throw std::runtime_error(what + ": render/parse round trip changed the proof");
  }
  return p;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed for " + path.string());
  std::cout << "wrote " << path.string() << "\n";
}

ProofNode search_proof(CalculusId c, const Sequent& goal, const std::string& what) {
  SearchResult sr = prove(c, goal, SearchBudget{40, 200000});
  if (sr.status != SearchStatus::Proved || !sr.proof) {
    throw std::runtime_error("search failed for " + what + ": " + render(goal));
  }
  return *sr.proof;
}

const RegressionTarget& target_named(const std::string& name) {
  for (const RegressionTarget& t : regression_targets()) {
    if (t.name == name) return t;
  }
  throw std::runtime_error("no regression target named " + name);
}

// |- direction of the distribution law: oI.bI p v oI.bI q |- oI.bI (p v q).
// Each disjunct embeds into the interior of the join, so the disjunction
// does too; fully explicit, no cuts.
ProofNode t7_in_tree() {
  const std::string g = "(circI (boxI (or p q)))";
  auto branch = [&](const char* a, bool swap) {
    std::string fa = std::string("(circI (boxI ") + a + "))";
    ProofNode id = node("Id_D", std::string("(seq ") + a + " " + a + ")");
    ProofNode w = swap ? node("W_D", std::string("(seq ") + a + " (s-vee q p))", {id})
                       : node("W_D", std::string("(seq ") + a + " (s-vee p q))", {id});
    ProofNode v = swap ? node("E_D", std::string("(seq ") + a + " (s-vee p q))", {w})
                       : w;
    ProofNode o = node("or_R", std::string("(seq ") + a + " (or p q))", {v});
    ProofNode bl = node("boxI_L",
                        std::string("(seq (boxI ") + a + ") (s-boxI (or p q)))", {o});
    ProofNode br = node("boxI_R",
                        std::string("(seq (boxI ") + a + ") (boxI (or p q)))", {bl});
    ProofNode em = node("circI_emb",
                        std::string("(seq (s-circI (boxI ") + a + ")) (s-circI (boxI (or p q))))",
                        {br});
    ProofNode cl = node("circI_L",
                        "(seq " + fa + " (s-circI (boxI (or p q))))", {em});
    return node("circI_R", "(seq " + fa + " " + g + ")", {cl});
  };
  ProofNode left = branch("p", false);
  ProofNode right = branch("q", true);
  ProofNode both = node("or_L",
                        "(seq (or (circI (boxI p)) (circI (boxI q))) (s-vee " + g + " " + g + "))",
                        {left, right});
  return node("C_D", "(seq (or (circI (boxI p)) (circI (boxI q))) " + g + ")", {both});
}

// Identity counit for the interior composite: oI.bI p |- p.
ProofNode counit_interior() {
  ProofNode id = node("Id_D", "(seq p p)");
  ProofNode bl = node("boxI_L", "(seq (boxI p) (s-boxI p))", {id});
  ProofNode ad = node("ad_DKI", "(seq (s-circI (boxI p)) p)", {bl});
  return node("circI_L", "(seq (circI (boxI p)) p)", {ad});
}

// Identity unit for the closure composite: p |- oC.dC p.
ProofNode unit_closure() {
  ProofNode id = node("Id_D", "(seq p p)");
  ProofNode dr = node("diamC_R", "(seq (s-diamC p) (diamC p))", {id});
  ProofNode ad = node("ad_DKC", "(seq p (s-circC (diamC p)))", {dr});
  return node("circC_R", "(seq p (circC (diamC p)))", {ad});
}

// Closed instance of the reflection rule: from oI.bI p |- oI.bI p and
// oC.dC p |- oC.dC p (both supplied as identity derivations) derive p |- p.
// The two-premise structural rule produces the guarded sequent; the guards
// are then converted to formulas and discharged against the hypotheses with
// four Cut_D applications (one per hypothesis, two to assemble the result).
ProofNode t8_closed_tree(CalculusId c) {
  const std::string fI = "(circI (boxI p))";
  const std::string fC = "(circC (diamC p))";
  ProofNode idp = node("Id_D", "(seq p p)");

  // Middle branch: the rule instance, then formula handles for both guards.
  ProofNode mid0 = node(
      "ia3",
      "(seq (s-wedge p (s-circC (s-diamC p))) (s-vee (s-circI (s-boxI p)) p))",
      {idp, idp});
  Sequent s0 = mid0.concl;
  DisplayResult d1 = display_occurrence(s0, Occurrence{false, {0}});
  ProofNode at1 = unwrap_display(d1, mid0);
  std::string ctx1 = render(d1.displayed.lhs);
  ProofNode n1 = node("ad_DKI", "(seq (s-diamI " + ctx1 + ") (s-boxI p))", {at1});
  ProofNode n2 = node("boxI_R", "(seq (s-diamI " + ctx1 + ") (boxI p))", {n1});
  ProofNode n3 = node("ad_DKI", "(seq " + ctx1 + " (s-circI (boxI p)))", {n2});
  ProofNode n4 = node("circI_R", "(seq " + ctx1 + " " + fI + ")", {n3});
  ProofNode s1p = wrap_display_replaced(s0, Occurrence{false, {0}},
                                        parse_term(fI), n4);
  Sequent s1 = s1p.concl;
  DisplayResult d2 = display_occurrence(s1, Occurrence{true, {1}});
  ProofNode at2 = unwrap_display(d2, s1p);
  std::string ctx2 = render(d2.displayed.rhs);
  ProofNode k1 = node("ad_DKC", "(seq (s-diamC p) (s-boxC " + ctx2 + "))", {at2});
  ProofNode k2 = node("diamC_L", "(seq (diamC p) (s-boxC " + ctx2 + "))", {k1});
  ProofNode k3 = node("ad_DKC", "(seq (s-circC (diamC p)) " + ctx2 + ")", {k2});
  ProofNode k4 = node("circC_L", "(seq " + fC + " " + ctx2 + ")", {k3});
  ProofNode s2p = wrap_display_replaced(s1, Occurrence{true, {1}},
                                        parse_term(fC), k4);
  ProofNode m5 = node("or_R", "(seq (s-wedge p " + fC + ") (or " + fI + " p))", {s2p});
  ProofNode mid = node("and_L", "(seq (and p " + fC + ") (or " + fI + " p))", {m5});

  // Right branch: interior hypothesis cut against its counit.
  ProofNode h1 = derive_identity(c, parse_term(fI));
  ProofNode rcut = node("Cut_D", "(seq " + fI + " p)", {h1, counit_interior()});
  ProofNode ror = node("or_L", "(seq (or " + fI + " p) (s-vee p p))", {rcut, idp});
  ProofNode rgt = node("C_D", "(seq (or " + fI + " p) p)", {ror});

  // Left branch: closure hypothesis cut against its unit.
  ProofNode h2 = derive_identity(c, parse_term(fC));
  ProofNode lcut = node("Cut_D", "(seq p " + fC + ")", {unit_closure(), h2});
  ProofNode land = node("and_R", "(seq (s-wedge p p) (and p " + fC + "))", {idp, lcut});
  ProofNode lft = node("C_D", "(seq p (and p " + fC + "))", {land});

  ProofNode b1 = node("Cut_D", "(seq (and p " + fC + ") p)", {mid, rgt});
  return node("Cut_D", "(seq p p)", {lft, b1});
}

std::string cut_rule_for(const TermPtr& f) {
  switch (sort_of(f)) {
    case Sort::KI: return "Cut_KI";
    case Sort::KC: return "Cut_KC";
    default: return "Cut_D";
  }
}

// f |- f proved the long way round: identity derivation cut against itself.
ProofNode id_cut(CalculusId c, const std::string& formula) {
  TermPtr f = parse_term(formula);
  ProofNode lhs = derive_identity(c, f);
  ProofNode rhs = derive_identity(c, f);
  return ProofNode{cut_rule_for(f), lhs.concl, {lhs, rhs}};
}

struct CorpusEntry {
  std::string file;  // "<calculus-tag>_<name>.mtp"
  CalculusId c;
  ProofNode proof;
};

}  // namespace

int main(int argc, char** argv) {
  try {
    fs::path root = argc > 1 ? fs::path(argv[1]) : fs::path("data");
    fs::create_directories(root / "golden");
    fs::create_directories(root / "corpus");

    // ---- golden derivations ----
    const RegressionTarget& t6 = target_named("interior-complement");
    ProofNode g6 = checked(t6.calculus, search_proof(t6.calculus, t6.sequent, t6.name),
                           "golden_t6");
    write_file(root / "golden/golden_t6.mtp", render_proof(g6));

    const RegressionTarget& t7o = target_named("interior-join-out");
    ProofNode g7o = checked(t7o.calculus, search_proof(t7o.calculus, t7o.sequent, t7o.name),
                            "golden_t7_out");
    write_file(root / "golden/golden_t7_out.mtp", render_proof(g7o));

    const RegressionTarget& t7i = target_named("interior-join-in");
    ProofNode g7i = checked(t7i.calculus, t7_in_tree(), "golden_t7_in");
    if (!(g7i.concl == t7i.sequent)) {
      throw std::runtime_error("golden_t7_in does not end in the expected sequent");
    }
    write_file(root / "golden/golden_t7_in.mtp", render_proof(g7i));

    ProofNode g8 = checked(CalculusId::IA3, t8_closed_tree(CalculusId::IA3), "golden_t8");
    if (count_cuts(g8) < 3) {
      throw std::runtime_error("golden_t8 lost its cuts");
    }
    CutElimResult g8free = eliminate_cuts(CalculusId::IA3, g8);
    if (count_cuts(g8free.proof) != 0 || !(g8free.proof.concl == g8.concl)) {
      throw std::runtime_error("golden_t8 does not eliminate cleanly");
    }
    write_file(root / "golden/golden_t8.mtp", render_proof(g8));

    // ---- cut-bearing corpus ----
    std::vector<CorpusEntry> corpus;
    auto add = [&corpus](std::string file, CalculusId c, ProofNode p) {
      corpus.push_back(CorpusEntry{std::move(file), c, std::move(p)});
    };

    add("tqba_cut_and.mtp", CalculusId::TQBA, id_cut(CalculusId::TQBA, "(and p q)"));
    add("tqba_cut_neg.mtp", CalculusId::TQBA,
        id_cut(CalculusId::TQBA, "(neg (or p (neg q)))"));
    add("tqba_cut_ki.mtp", CalculusId::TQBA,
        id_cut(CalculusId::TQBA, "(cap (boxI p) (boxI q))"));
    add("tqba_cut_kc.mtp", CalculusId::TQBA,
        id_cut(CalculusId::TQBA, "(sqcup (diamC p) (diamC q))"));
    add("tqba5_cut_sim.mtp", CalculusId::TQBA5,
        id_cut(CalculusId::TQBA5, "(circI (simK (boxI p)))"));
    add("pra_cut_mixed.mtp", CalculusId::PRA,
        id_cut(CalculusId::PRA, "(or (circI (simK (boxI p))) (circC (diamC q)))"));

    {
      ProofNode inner = id_cut(CalculusId::TQBA, "(or p (and q r))");
      ProofNode outer = ProofNode{
          "Cut_D", inner.concl,
          {inner, derive_identity(CalculusId::TQBA, parse_term("(or p (and q r))"))}};
      add("tqba_cut_nested.mtp", CalculusId::TQBA, outer);
    }
    {
      // Interior counit composed with closure unit: oI.bI p |- oC.dC p.
      ProofNode comp = node("Cut_D", "(seq (circI (boxI p)) (circC (diamC p)))",
                            {counit_interior(), unit_closure()});
      add("tqba_cut_counit_unit.mtp", CalculusId::TQBA, comp);
    }

    // Search proofs whose macro steps introduce analytic cuts.
    const std::vector<std::pair<std::string, std::string>> macro_goals = {
        {"tqba_macro_cap.mtp",
         "(seq (and (circI (boxI p)) (circI (boxI q))) (circI (cap (boxI p) (boxI q))))"},
        {"tqba_macro_cup.mtp",
         "(seq (circI (cup (boxI p) (boxI q))) (or (circI (boxI p)) (circI (boxI q))))"},
        {"tqba_macro_sqcup.mtp",
         "(seq (circC (sqcup (diamC p) (diamC q))) (or (circC (diamC p)) (circC (diamC q))))"},
        {"tqba_macro_sqcap.mtp",
         "(seq (and (circC (diamC p)) (circC (diamC q))) (circC (sqcap (diamC p) (diamC q))))"},
    };
    for (const auto& [file, goal] : macro_goals) {
      ProofNode p = search_proof(CalculusId::TQBA, parse_sequent(goal), file);
      if (count_cuts(p) > 0) add(file, CalculusId::TQBA, p);
    }

    int with_cuts = 1;  // golden_t8 is part of the elimination corpus
    for (const CorpusEntry& e : corpus) {
      if (count_cuts(e.proof) < 1) {
        throw std::runtime_error(e.file + " has no cut");
      }
      ++with_cuts;
      ProofNode ok = checked(e.c, e.proof, e.file);
      write_file(root / "corpus" / e.file, render_proof(ok));
    }
    if (with_cuts < 10) {
      throw std::runtime_error("corpus smaller than ten cut-bearing proofs");
    }
    std::cout << "corpus size including the closed reflection instance: "
              << with_cuts << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "goldengen: " << e.what() << "\n";
    return 1;
  }
}

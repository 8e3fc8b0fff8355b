// Unit tests for the rule catalog, schema matching, proof checking and the
// display property.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "roughproof/check.hpp"

using namespace rp;

namespace {

Sequent sq(const std::string& s) { return parse_sequent(s); }

int count_rules(CalculusId c) { return static_cast<int>(rule_set(c).size()); }

}  // namespace

TEST_CASE("catalog is well-formed") {
  for (const Rule& r : rule_catalog()) {
    // Schemas type-check by construction; conclusions determine premises'
    // metavariables for forward checking except in cuts and axioms.
    CHECK(!r.name.empty());
    CHECK_NOTHROW(sequent_sort(r.conclusion));
    for (const auto& p : r.premises) CHECK_NOTHROW(sequent_sort(p));
    if (r.bidirectional) CHECK(r.premises.size() == 1);
  }
}

TEST_CASE("calculus inclusions hold rule-wise") {
  auto subset = [](CalculusId small, CalculusId big) {
    for (const Rule* r : rule_set(small))
      if (!r->in_calculus(big)) return false;
    return true;
  };
  CHECK(subset(CalculusId::TQBA, CalculusId::TQBA5));
  CHECK(subset(CalculusId::TQBA5, CalculusId::IA1));
  CHECK(subset(CalculusId::TQBA5, CalculusId::IA2));
  CHECK(subset(CalculusId::TQBA5, CalculusId::IA3));
  CHECK(subset(CalculusId::IA1, CalculusId::PRA));
  CHECK(subset(CalculusId::IA2, CalculusId::PRA));
  CHECK(subset(CalculusId::IA3, CalculusId::PRA));
  // Frozen sizes: base calculus, the tqBa5 extension, and the full system.
  CHECK(count_rules(CalculusId::TQBA) == 97);
  CHECK(count_rules(CalculusId::TQBA5) == 110);
  CHECK(count_rules(CalculusId::IA1) == 112);
  CHECK(count_rules(CalculusId::IA2) == 112);
  CHECK(count_rules(CalculusId::IA3) == 111);
  CHECK(count_rules(CalculusId::PRA) == 115);
}

TEST_CASE("rule name lookup and aliases") {
  CHECK(rules_by_name(CalculusId::TQBA, "res_D").size() == 2);
  CHECK(rules_by_name(CalculusId::TQBA, "cgri").empty());
  CHECK(rules_by_name(CalculusId::IA1, "cgri").size() == 2);
  CHECK(rules_by_name(CalculusId::IA3, "pra").size() == 1);
  CHECK(rules_by_name(CalculusId::IA3, "ia3").size() == 1);
  CHECK(rules_by_name(CalculusId::IA2, "boxI-vee").size() == 1);
  CHECK(canonical_rule_name("pra") == "ia3");
  CHECK(rule_name_exists("diamC-cap"));
  CHECK_FALSE(rule_name_exists("nonsense"));
}

TEST_CASE("match_schema returns the unique sort-respecting substitution") {
  const Rule* and_intro = rules_by_name(CalculusId::TQBA, "and_R")[0];
  auto subs = match_schema(*and_intro, sq("(seq (s-wedge p q) (and p q))"));
  REQUIRE(subs.size() == 1);
  CHECK(render(*subst_find(subs[0], "X")) == "p");
  CHECK(render(*subst_find(subs[0], "A")) == "p");

  // Sort clash: conclusion of and_R needs a D sequent.
  const Rule* cap_intro = rules_by_name(CalculusId::TQBA, "cap_R")[0];
  CHECK(match_schema(*cap_intro, sq("(seq (s-wedge p q) (and p q))")).empty());

  // Formula metavariables refuse structural instances.
  CHECK(match_schema(*and_intro, sq("(seq (s-wedge p q) (and p q))")).size() == 1);
  const Rule* id = rules_by_name(CalculusId::TQBA, "Id_D")[0];
  CHECK(match_schema(*id, sq("(seq p p)")).size() == 1);
  CHECK(match_schema(*id, sq("(seq p q)")).empty());
  CHECK(match_schema(*id, sq("(seq (and p p) (and p p))")).empty());
}

TEST_CASE("check_proof accepts a small derivation") {
  ProofNode p = parse_proof(
      "(rule and_L (seq (and p q) p)"
      "  (rule W_D (seq (s-wedge p q) p)"
      "    (rule Id_D (seq p p))))");
  CHECK_NOTHROW(check_proof(CalculusId::TQBA, p));
}

TEST_CASE("check_proof validates double-line rules in both orientations") {
  // unit_top used in the introduction direction (downward: X ⊢ Y from X∧̂⊤̂ ⊢ Y)
  ProofNode intro = parse_proof(
      "(rule unit_top (seq p p)"
      "  (rule W_D (seq (s-wedge p s-top) p)"
      "    (rule Id_D (seq p p))))");
  CHECK_NOTHROW(check_proof(CalculusId::TQBA, intro));
  // ... and in the other direction (X∧̂⊤̂ ⊢ Y from X ⊢ Y).
  ProofNode elim = parse_proof(
      "(rule unit_top (seq (s-wedge p s-top) p)"
      "  (rule Id_D (seq p p)))");
  CHECK_NOTHROW(check_proof(CalculusId::TQBA, elim));
}

TEST_CASE("check_proof pinpoints defects") {
  // The canonical identity-rule error.
  ProofNode bad = parse_proof("(rule Id_D (seq p q))");
  try {
    check_proof(CalculusId::TQBA, bad);
    FAIL("expected ProofError");
  } catch (const ProofError& e) {
    CHECK(e.path.empty());
    CHECK(std::string(e.what()).find("Id_D requires identical atoms") != std::string::npos);
  }

  // A wrong premise deep in the tree reports its path.
  ProofNode deep = parse_proof(
      "(rule and_L (seq (and p q) p)"
      "  (rule W_D (seq (s-wedge p q) p)"
      "    (rule Id_D (seq q q))))");
  try {
    check_proof(CalculusId::TQBA, deep);
    FAIL("expected ProofError");
  } catch (const ProofError& e) {
    CHECK(e.path == std::vector<int>{0});
  }

  // Unknown rule names are flagged as such.
  ProofNode unk = parse_proof("(rule frobnicate (seq p p))");
  CHECK_THROWS_AS(check_proof(CalculusId::TQBA, unk), UnknownRule);

  // Known rule, wrong calculus.
  ProofNode cg = parse_proof(
      "(rule cgri (seq (s-boxI p) (s-cup (s-sim (s-boxI p)) (s-boxI p)))"
      "  (rule W_KI (seq (s-cap (s-boxI p) (s-boxI p)) (s-boxI p))"
      "    (rule Id_D (seq p p))))");
  try {
    check_proof(CalculusId::TQBA, cg);
    FAIL("expected ProofError");
  } catch (const ProofError& e) {
    CHECK(std::string(e.what()).find("not part of D.TQBA") != std::string::npos);
  }

  // Arity mismatch (Cut_D with one premise).
  ProofNode cut1 = parse_proof(
      "(rule Cut_D (seq p q) (rule Id_D (seq p p)))");
  try {
    check_proof(CalculusId::TQBA, cut1);
    FAIL("expected ProofError");
  } catch (const ProofError& e) {
    CHECK(std::string(e.what()).find("expects 2 premise(s)") != std::string::npos);
  }
}

TEST_CASE("cut premises must agree on the cut formula") {
  ProofNode good = parse_proof(
      "(rule Cut_D (seq (s-wedge p q) p)"
      "  (rule W_D (seq (s-wedge p q) p) (rule Id_D (seq p p)))"
      "  (rule Id_D (seq p p)))");
  CHECK_NOTHROW(check_proof(CalculusId::TQBA, good));

  ProofNode bad = parse_proof(
      "(rule Cut_D (seq (s-wedge p q) q)"
      "  (rule W_D (seq (s-wedge p q) p) (rule Id_D (seq p p)))"
      "  (rule Id_D (seq q q)))");
  CHECK_THROWS_AS(check_proof(CalculusId::TQBA, bad), ProofError);
}

TEST_CASE("display_occurrence displays every displayable position") {
  // (p ∧̂ ¬̃q ⊢ r): display q (path [1 0] on the left). Two steps:
  // res_D to ¬̃q ⊢ p →̌ r, then gal_D to ¬̃(p →̌ r) ⊢ q.
  Sequent s = sq("(seq (s-wedge p (s-neg q)) r)");
  DisplayResult d = display_occurrence(s, {true, {1, 0}});
  CHECK(render(d.displayed) == "(seq (s-neg (s-arrow p r)) q)");
  CHECK_FALSE(d.on_lhs);
  CHECK(d.steps.size() == 2);

  // Wrapping a proof of the displayed sequent yields a checkable proof of
  // the original sequent.
  Sequent s2 = sq("(seq (s-wedge p q) p)");
  DisplayResult d2 = display_occurrence(s2, {true, {1}});
  CHECK(render(d2.displayed) == "(seq q (s-arrow p p))");
  ProofNode displayed_proof = parse_proof(
      "(rule res_D (seq q (s-arrow p p))"
      "  (rule W_D (seq (s-wedge p q) p)"
      "    (rule Id_D (seq p p))))");
  ProofNode wrapped = wrap_display(d2, displayed_proof);
  CHECK(wrapped.concl == s2);
  CHECK_NOTHROW(check_proof(CalculusId::TQBA, wrapped));
}

TEST_CASE("display walks through the multi-type connectives") {
  // q inside ∨̌ inside ■̌_I on the right.
  Sequent s = sq("(seq (s-boxI p) (s-boxI (s-vee q r)))");
  DisplayResult d = display_occurrence(s, {false, {0, 0}});
  CHECK(render(d.displayed) == "(seq (s-excl r (s-circI (s-boxI p))) q)");

  // p under ♦̂_C under ∘̃_C on the left.
  Sequent s2 = sq("(seq (s-circC (s-diamC p)) q)");
  DisplayResult d2 = display_occurrence(s2, {true, {0, 0}});
  CHECK(render(d2.displayed) == "(seq p (s-circC (s-boxC q)))");
}

TEST_CASE("non-displayable positions are reported") {
  // Inside a formula leaf.
  Sequent s = sq("(seq (and p q) p)");
  CHECK_THROWS_AS(display_occurrence(s, {true, {0}}), NotDisplayable);
  // Polarity-inconsistent: ■̌_I used as the antecedent of a KI sequent.
  Sequent s2 = sq("(seq (s-boxI p) (s-boxI q))");
  CHECK_THROWS_AS(display_occurrence(s2, {true, {0}}), NotDisplayable);
  // Whole side: nothing to do.
  DisplayResult d = display_occurrence(s, {true, {}});
  CHECK(d.steps.empty());
  CHECK(d.displayed == s);
}

TEST_CASE("unwrap_display inverts wrap_display") {
  Sequent s = sq("(seq (s-wedge p q) p)");
  DisplayResult d = display_occurrence(s, {true, {1}});
  ProofNode orig = parse_proof(
      "(rule W_D (seq (s-wedge p q) p)"
      "  (rule Id_D (seq p p)))");
  ProofNode up = unwrap_display(d, orig);
  CHECK(up.concl == d.displayed);
  CHECK_NOTHROW(check_proof(CalculusId::TQBA, up));
}

TEST_CASE("rule export is stable and complete") {
  std::string txt = export_rules(CalculusId::TQBA);
  CHECK(txt.find("rule res_D") != std::string::npos);
  CHECK(txt.find("s-supL") != std::string::npos);
  CHECK(txt == export_rules(CalculusId::TQBA));
  // Extension rules only in their calculi.
  CHECK(export_rules(CalculusId::TQBA).find("cgri") == std::string::npos);
  CHECK(export_rules(CalculusId::IA1).find("cgri") != std::string::npos);
}

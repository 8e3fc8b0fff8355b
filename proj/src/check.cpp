#include "roughproof/check.hpp"

namespace rp {

namespace {

// Attempts one catalog entry in forward orientation: conclusion schema
// against the node's conclusion, premise schemas against the children's
// conclusions, all under one substitution (this also enforces side
// conditions like cut formulas agreeing across premises). On failure returns
// a diagnostic ranked by how far matching got.
struct Attempt {
  bool ok = false;
  int progress = 0;  // 0: conclusion mismatch, 1: arity, 2+: premise i failed
  std::string message;
};

Attempt try_entry(const Rule& r, bool reversed, const ProofNode& node) {
  Attempt a;
  const Sequent& concl = reversed ? r.premises[0] : r.conclusion;
  Subst s;
  if (!match_sequent(concl, node.concl, s)) {
    a.message = "conclusion " + render(node.concl) + " does not match the " + r.name +
                " schema " + render(concl);
    return a;
  }
  a.progress = 1;
  size_t want = reversed ? 1 : r.premises.size();
  if (node.kids.size() != want) {
    a.message = "rule " + r.name + " expects " + std::to_string(want) +
                " premise(s), got " + std::to_string(node.kids.size());
    return a;
  }
  for (size_t i = 0; i < want; ++i) {
    const Sequent& prem = reversed ? r.conclusion : r.premises[i];
    Subst saved = s;
    if (!match_sequent(prem, node.kids[i].concl, s)) {
      a.progress = 2 + static_cast<int>(i);
      // Render the expected premise if it is fully determined already.
      std::string expect;
      try {
        expect = render(apply_subst(prem, saved));
      } catch (const std::logic_error&) {
        expect = render(prem) + " (schema)";
      }
      a.message = "premise " + std::to_string(i) + " of " + r.name + " should be " +
                  expect + " but is " + render(node.kids[i].concl);
      return a;
    }
  }
  a.ok = true;
  a.progress = 1000;
  return a;
}

void check_node(CalculusId c, const ProofNode& node, std::vector<int>& path) {
  if (!rule_name_exists(node.rule))
    throw UnknownRule(node.rule, "at proof path " + ProofError::path_string(path));
  auto entries = rules_by_name(c, node.rule);
  if (entries.empty())
    throw ProofError(path, "rule " + node.rule + " is not part of " + calculus_name(c));

  Attempt best;
  best.progress = -1;
  for (const Rule* r : entries) {
    Attempt a = try_entry(*r, false, node);
    if (a.ok) { best = a; break; }
    if (a.progress > best.progress) best = a;
    if (r->bidirectional) {
      Attempt b = try_entry(*r, true, node);
      if (b.ok) { best = b; break; }
      if (b.progress > best.progress) best = b;
    }
  }
  if (!best.ok) {
    // The canonical special case deserves its exact message.
    if (node.rule == "Id_D" && node.concl.lhs->op == Op::Atom &&
        node.concl.rhs->op == Op::Atom &&
        node.concl.lhs->name != node.concl.rhs->name)
      throw ProofError(path, "Id_D requires identical atoms");
    throw ProofError(path, best.message);
  }
  for (size_t i = 0; i < node.kids.size(); ++i) {
    path.push_back(static_cast<int>(i));
    check_node(c, node.kids[i], path);
    path.pop_back();
  }
}

}  // namespace

void check_proof(CalculusId c, const ProofNode& proof) {
  std::vector<int> path;
  check_node(c, proof, path);
}

std::optional<std::string> check_proof_error(CalculusId c, const ProofNode& proof) {
  try {
    check_proof(c, proof);
    return std::nullopt;
  } catch (const std::exception& e) {
    return std::string(e.what());
  }
}

namespace {

[[noreturn]] void not_displayable(const Occurrence& occ, const std::string& why) {
  throw NotDisplayable(occ, "occurrence is not displayable: " + why);
}

}  // namespace

DisplayResult display_occurrence(const Sequent& s, const Occurrence& occ) {
  // Validate the path before walking.
  subterm_at(occ.on_lhs ? s.lhs : s.rhs, occ.path);

  Sequent cur = s;
  bool lhs = occ.on_lhs;
  Path p = occ.path;
  std::vector<DisplayStep> steps;

  auto push = [&](const char* rule, Sequent next) {
    steps.push_back({rule, cur});
    cur = std::move(next);
  };

  while (!p.empty()) {
    TermPtr side = lhs ? cur.lhs : cur.rhs;
    TermPtr other = lhs ? cur.rhs : cur.lhs;
    int k = p.front();
    if (op_is_operational(side->op))
      not_displayable(occ, "the position lies inside a formula");
    const auto& kid = side->kids;
    auto pop = [&p] { p.erase(p.begin()); };

    if (lhs) {
      switch (side->op) {
        case Op::HatAnd:
          if (k == 0) {
            push("E_D", {mk(Op::HatAnd, {kid[1], kid[0]}), other});
            p[0] = 1;
          } else {
            push("res_D", {kid[1], mk(Op::CheckArrow, {kid[0], other})});
            pop();
          }
          break;
        case Op::HatCap:
          if (k == 0) {
            push("E_KI", {mk(Op::HatCap, {kid[1], kid[0]}), other});
            p[0] = 1;
          } else {
            push("res_KI", {kid[1], mk(Op::CheckSupRes, {kid[0], other})});
            pop();
          }
          break;
        case Op::HatSqcap:
          if (k == 0) {
            push("E_KC", {mk(Op::HatSqcap, {kid[1], kid[0]}), other});
            p[0] = 1;
          } else {
            push("res_KC", {kid[1], mk(Op::CheckSqsupRes, {kid[0], other})});
            pop();
          }
          break;
        case Op::HatExcl:
          // (Y >̂ X ⊢ Z)  ⇝  (X ⊢ Y ∨̌ Z)
          push("res_D", {kid[1], mk(Op::CheckOr, {kid[0], other})});
          if (k == 1) { pop(); } else { lhs = false; /* p[0]==0 maps to ∨̌ slot 0 */ }
          break;
        case Op::HatSupRes:
          push("res_KI", {kid[1], mk(Op::CheckCup, {kid[0], other})});
          if (k == 1) { pop(); } else { lhs = false; }
          break;
        case Op::HatSqsupRes:
          push("res_KC", {kid[1], mk(Op::CheckSqcup, {kid[0], other})});
          if (k == 1) { pop(); } else { lhs = false; }
          break;
        case Op::TildeNeg:
          push("gal_D", {mk(Op::TildeNeg, {other}), kid[0]});
          pop();
          lhs = false;
          break;
        case Op::TildeSim:
          push("gal_KI", {mk(Op::TildeSim, {other}), kid[0]});
          pop();
          lhs = false;
          break;
        case Op::TildeMinus:
          push("gal_KC", {mk(Op::TildeMinus, {other}), kid[0]});
          pop();
          lhs = false;
          break;
        case Op::TildeCircI:
          push("ad_DKI", {kid[0], mk(Op::CheckBoxI, {other})});
          pop();
          break;
        case Op::TildeCircC:
          push("ad_DKC", {kid[0], mk(Op::CheckBoxC, {other})});
          pop();
          break;
        case Op::HatDiamI:
          push("ad_DKI", {kid[0], mk(Op::TildeCircI, {other})});
          pop();
          break;
        case Op::HatDiamC:
          push("ad_DKC", {kid[0], mk(Op::TildeCircC, {other})});
          pop();
          break;
        default:
          not_displayable(occ, std::string("no display rule moves into '") +
                                   op_token(side->op) + "' in antecedent position");
      }
    } else {
      switch (side->op) {
        case Op::CheckOr:
          if (k == 0) {
            push("E_D", {other, mk(Op::CheckOr, {kid[1], kid[0]})});
            p[0] = 1;
          } else {
            // (X ⊢ Y ∨̌ Z)  ⇝  (Y >̂ X ⊢ Z); the occurrence stays on the right
            push("res_D", {mk(Op::HatExcl, {kid[0], other}), kid[1]});
            pop();
          }
          break;
        case Op::CheckCup:
          if (k == 0) {
            push("E_KI", {other, mk(Op::CheckCup, {kid[1], kid[0]})});
            p[0] = 1;
          } else {
            push("res_KI", {mk(Op::HatSupRes, {kid[0], other}), kid[1]});
            pop();
          }
          break;
        case Op::CheckSqcup:
          if (k == 0) {
            push("E_KC", {other, mk(Op::CheckSqcup, {kid[1], kid[0]})});
            p[0] = 1;
          } else {
            push("res_KC", {mk(Op::HatSqsupRes, {kid[0], other}), kid[1]});
            pop();
          }
          break;
        case Op::CheckArrow:
          // (Y ⊢ X →̌ Z)  ⇝  (X ∧̂ Y ⊢ Z)
          push("res_D", {mk(Op::HatAnd, {kid[0], other}), kid[1]});
          if (k == 1) { pop(); } else { lhs = true; /* slot 0 of ∧̂ */ }
          break;
        case Op::CheckSupRes:
          push("res_KI", {mk(Op::HatCap, {kid[0], other}), kid[1]});
          if (k == 1) { pop(); } else { lhs = true; }
          break;
        case Op::CheckSqsupRes:
          push("res_KC", {mk(Op::HatSqcap, {kid[0], other}), kid[1]});
          if (k == 1) { pop(); } else { lhs = true; }
          break;
        case Op::TildeNeg:
          push("gal_D", {kid[0], mk(Op::TildeNeg, {other})});
          pop();
          lhs = true;
          break;
        case Op::TildeSim:
          push("gal_KI", {kid[0], mk(Op::TildeSim, {other})});
          pop();
          lhs = true;
          break;
        case Op::TildeMinus:
          push("gal_KC", {kid[0], mk(Op::TildeMinus, {other})});
          pop();
          lhs = true;
          break;
        case Op::CheckBoxI:
          push("ad_DKI", {mk(Op::TildeCircI, {other}), kid[0]});
          pop();
          break;
        case Op::CheckBoxC:
          push("ad_DKC", {mk(Op::TildeCircC, {other}), kid[0]});
          pop();
          break;
        case Op::TildeCircI:
          push("ad_DKI", {mk(Op::HatDiamI, {other}), kid[0]});
          pop();
          break;
        case Op::TildeCircC:
          push("ad_DKC", {mk(Op::HatDiamC, {other}), kid[0]});
          pop();
          break;
        default:
          not_displayable(occ, std::string("no display rule moves into '") +
                                   op_token(side->op) + "' in succedent position");
      }
    }
    if (steps.size() > 4 * (occ.path.size() + 1) + 8)
      not_displayable(occ, "display chain did not converge");
  }
  return DisplayResult{cur, lhs, std::move(steps)};
}

ProofNode wrap_display(const DisplayResult& res, ProofNode proof_of_displayed) {
  ProofNode acc = std::move(proof_of_displayed);
  for (auto it = res.steps.rbegin(); it != res.steps.rend(); ++it)
    acc = ProofNode{it->rule, it->conclusion, {std::move(acc)}};
  return acc;
}

ProofNode wrap_display_replaced(const Sequent& original, const Occurrence& occ,
                                const TermPtr& repl, ProofNode inner) {
  Sequent modified = original;
  if (occ.on_lhs)
    modified.lhs = replace_at(modified.lhs, occ.path, repl);
  else
    modified.rhs = replace_at(modified.rhs, occ.path, repl);
  DisplayResult res = display_occurrence(modified, occ);
  return wrap_display(res, std::move(inner));
}

ProofNode unwrap_display(const DisplayResult& res, ProofNode proof_of_original) {
  ProofNode acc = std::move(proof_of_original);
  for (size_t i = 0; i < res.steps.size(); ++i) {
    const Sequent& premise =
        i + 1 < res.steps.size() ? res.steps[i + 1].conclusion : res.displayed;
    acc = ProofNode{res.steps[i].rule, premise, {std::move(acc)}};
  }
  return acc;
}

}  // namespace rp

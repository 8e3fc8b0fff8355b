#include "roughproof/cutelim.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace rp {

namespace {

ProofNode node(std::string rule, Sequent concl, std::vector<ProofNode> kids) {
  return ProofNode{std::move(rule), std::move(concl), std::move(kids)};
}

const char* cut_name_for(const TermPtr& formula) {
  switch (sort_of(formula)) {
    case Sort::D:
      return "Cut_D";
    case Sort::KI:
      return "Cut_KI";
    case Sort::KC:
      return "Cut_KC";
  }
  return "Cut_D";
}

// The catalog entry and orientation a checked node actually instantiates.
struct Step {
  const Rule* rule = nullptr;
  bool reversed = false;
  Subst subst;
};

std::optional<Step> resolve_step(CalculusId c, const ProofNode& n) {
  for (const Rule* r : rules_by_name(c, n.rule)) {
    if (r->premises.size() == n.kids.size()) {
      Subst s;
      if (match_sequent(r->conclusion, n.concl, s)) {
        bool ok = true;
        for (size_t i = 0; i < n.kids.size(); ++i)
          if (!(apply_subst(r->premises[i], s) == n.kids[i].concl)) {
            ok = false;
            break;
          }
        if (ok) return Step{r, false, std::move(s)};
      }
    }
    if (r->bidirectional && r->premises.size() == 1 && n.kids.size() == 1) {
      Subst s;
      if (match_sequent(r->premises[0], n.concl, s) &&
          apply_subst(r->conclusion, s) == n.kids[0].concl)
        return Step{r, true, std::move(s)};
    }
  }
  return std::nullopt;
}

// How the last rule of a cut premise relates to the cut formula, which sits
// displayed on `succedent` ? rhs : lhs of the premise's conclusion.
enum class Role { Identity, Principal, Parametric };

struct Classified {
  Role role;
  Step step;  // unset for Identity
};

Classified classify(CalculusId c, const ProofNode& n, bool succedent,
                    const std::vector<int>& where) {
  if (n.rule == "Id_D") return {Role::Identity, {}};
  auto st = resolve_step(c, n);
  if (!st)
    throw StuckCut(where, "cannot resolve the last rule '" + n.rule + "' of a cut premise");
  const Sequent& eff = st->reversed ? st->rule->premises[0] : st->rule->conclusion;
  const TermPtr& side = succedent ? eff.rhs : eff.lhs;
  if (side->op == Op::MetaVar) return {Role::Parametric, std::move(*st)};
  if (op_is_operational(side->op)) return {Role::Principal, std::move(*st)};
  throw StuckCut(where, "cut premise ends in rule '" + n.rule +
                            "' whose schema cannot conclude a displayed formula");
}

void metavar_positions(const TermPtr& t, const std::string& v, Path& cur,
                       std::vector<Path>& out) {
  if (t->op == Op::MetaVar) {
    if (t->name == v) out.push_back(cur);
    return;
  }
  for (size_t i = 0; i < t->kids.size(); ++i) {
    cur.push_back(static_cast<int>(i));
    metavar_positions(t->kids[i], v, cur, out);
    cur.pop_back();
  }
}

std::vector<Occurrence> metavar_occurrences(const Sequent& schema, const std::string& v) {
  std::vector<Occurrence> out;
  Path cur;
  std::vector<Path> ps;
  metavar_positions(schema.lhs, v, cur, ps);
  for (auto& p : ps) out.push_back({true, std::move(p)});
  ps.clear();
  metavar_positions(schema.rhs, v, cur, ps);
  for (auto& p : ps) out.push_back({false, std::move(p)});
  return out;
}

// One splice: replace the traced copies of the cut formula throughout one cut
// premise, inserting cuts where the formula is introduced.
struct SpliceSpec {
  CalculusId calc;
  bool left;             // splicing the left premise: traced copies are succedent parts
  std::string cut_rule;  // name for the inserted cuts (same formula, same type)
  TermPtr cutf;          // the cut formula
  TermPtr repl;          // what replaces it: the other premise's outer side
  const ProofNode* other;
  std::vector<int> where;  // path of the original cut, for errors
  int inserted = 0;        // cuts placed at introduction sites
  int absorbed = 0;        // identity leaves that became the other premise
};

ProofNode splice(const ProofNode& n, std::vector<Occurrence> occs, SpliceSpec& sp) {
  if (occs.empty()) return n;
  for (const Occurrence& occ : occs) {
    const TermPtr sub = subterm_at(occ.on_lhs ? n.concl.lhs : n.concl.rhs, occ.path);
    if (!term_eq(sub, sp.cutf))
      throw StuckCut(sp.where, "traced occurrence does not hold the cut formula");
  }

  if (n.rule == "Id_D") {
    if (occs.size() != 1 || !occs[0].path.empty() || occs[0].on_lhs == sp.left)
      throw StuckCut(sp.where, "identity leaf traced with inconsistent polarity");
    ++sp.absorbed;
    return *sp.other;
  }
  if (is_cut_rule(n.rule))
    throw StuckCut(sp.where, "a cut premise contains another cut (not innermost)");

  auto st = resolve_step(sp.calc, n);
  if (!st)
    throw StuckCut(sp.where, "cannot resolve rule '" + n.rule + "' while splicing");
  const Sequent& eff_concl = st->reversed ? st->rule->premises[0] : st->rule->conclusion;
  const std::vector<Sequent> schemas =
      st->reversed ? std::vector<Sequent>{st->rule->conclusion}
                   : std::vector<Sequent>(st->rule->premises.begin(), st->rule->premises.end());

  // Classify each traced copy against the schema: inside a metavariable's
  // substitution (parametric, traced on), or the introduced formula itself.
  std::map<std::string, std::vector<Path>> param_rems;
  std::optional<Occurrence> principal;
  for (const Occurrence& occ : occs) {
    const TermPtr* s = occ.on_lhs ? &eff_concl.lhs : &eff_concl.rhs;
    size_t i = 0;
    while (i < occ.path.size() && (*s)->op != Op::MetaVar) {
      if (op_is_operational((*s)->op))
        throw StuckCut(sp.where, "traced occurrence descends into a schema formula");
      int k = occ.path[i];
      if (k < 0 || static_cast<size_t>(k) >= (*s)->kids.size())
        throw StuckCut(sp.where, "traced occurrence leaves the rule schema");
      s = &(*s)->kids[k];
      ++i;
    }
    if ((*s)->op == Op::MetaVar) {
      param_rems[(*s)->name].emplace_back(occ.path.begin() + static_cast<long>(i),
                                          occ.path.end());
    } else if (i == occ.path.size() && op_is_operational((*s)->op)) {
      if (!occ.path.empty())
        throw StuckCut(sp.where, "introduced cut formula is not displayed");
      if (principal)
        throw StuckCut(sp.where, "two introduction sites in one node");
      principal = occ;
    } else {
      throw StuckCut(sp.where, "traced occurrence stuck in the schema skeleton");
    }
  }
  if (principal && principal->on_lhs == sp.left)
    throw StuckCut(sp.where, "introduction site has inconsistent polarity");

  // Substitution with the traced copies replaced inside their metavariables.
  Subst sig2 = st->subst;
  for (const auto& [v, rems] : param_rems) {
    bool found = false;
    for (auto& [name, val] : sig2) {
      if (name != v) continue;
      TermPtr nv = val;
      for (const Path& r : rems) nv = replace_at(nv, r, sp.repl);
      val = std::move(nv);
      found = true;
      break;
    }
    if (!found)
      throw StuckCut(sp.where, "traced metavariable '" + v + "' is unbound");
  }

  // Push the traced copies into every occurrence of their metavariables in
  // the premises (none: the copy vanishes into a weakening; several: a
  // contraction duplicates it), and splice each subtree.
  std::vector<ProofNode> kids2;
  kids2.reserve(n.kids.size());
  for (size_t j = 0; j < n.kids.size(); ++j) {
    std::vector<Occurrence> kocc;
    for (const auto& [v, rems] : param_rems) {
      for (const Occurrence& pos : metavar_occurrences(schemas[j], v)) {
        for (const Path& r : rems) {
          Path full = pos.path;
          full.insert(full.end(), r.begin(), r.end());
          kocc.push_back({pos.on_lhs, std::move(full)});
        }
      }
    }
    ProofNode kid2 = splice(n.kids[j], std::move(kocc), sp);
    if (!(kid2.concl == apply_subst(schemas[j], sig2)))
      throw StuckCut(sp.where, "splice produced an unexpected premise for '" + n.rule + "'");
    kids2.push_back(std::move(kid2));
  }

  Sequent nc = apply_subst(eff_concl, sig2);
  ProofNode rebuilt = node(n.rule, nc, std::move(kids2));
  if (!principal) return rebuilt;

  // The node introduces the cut formula, displayed as the whole side: attach
  // the cut here, against the other premise of the original cut.
  Sequent cc = nc;
  if (sp.left)
    cc.rhs = sp.repl;
  else
    cc.lhs = sp.repl;
  ++sp.inserted;
  std::vector<ProofNode> cut_kids;
  if (sp.left) {
    cut_kids.push_back(std::move(rebuilt));
    cut_kids.push_back(*sp.other);
  } else {
    cut_kids.push_back(*sp.other);
    cut_kids.push_back(std::move(rebuilt));
  }
  return node(sp.cut_rule, std::move(cc), std::move(cut_kids));
}

// Both premises introduce the cut formula's outermost connective; replace the
// cut by cuts on the immediate subformulas.  `L` proves (X |- A), `R` proves
// (A |- Y), and the result proves `concl` = (X |- Y).
ProofNode reduce_principal(const Sequent& concl, const TermPtr& cutf, const ProofNode& L,
                           const ProofNode& R, const std::vector<int>& where,
                           std::string& how) {
  switch (cutf->op) {
    case Op::Top:
    case Op::OneI:
    case Op::OneC:
      how = "the axiom premise absorbs the cut";
      return R.kids.at(0);
    case Op::Bot:
    case Op::ZeroI:
    case Op::ZeroC:
      how = "the axiom premise absorbs the cut";
      return L.kids.at(0);

    case Op::And:
    case Op::Cap:
    case Op::Sqcap: {
      // Host: the single premise of the left-introduction, with both
      // subformulas in antecedent context; cut each against its proof from
      // the right-introduction side.
      how = "reduced to cuts on the two subformulas";
      ProofNode cur = R.kids.at(0);
      for (int slot = 1; slot >= 0; --slot) {
        const ProofNode& T = L.kids.at(static_cast<size_t>(slot));
        const Occurrence occ{true, {slot}};
        const Sequent host_seq = cur.concl;
        DisplayResult res = display_occurrence(host_seq, occ);
        ProofNode dp = unwrap_display(res, std::move(cur));
        Sequent cseq{T.concl.lhs, res.displayed.rhs};
        ProofNode cut = node(cut_name_for(cutf->kids[static_cast<size_t>(slot)]),
                             std::move(cseq), {T, std::move(dp)});
        cur = wrap_display_replaced(host_seq, occ, T.concl.lhs, std::move(cut));
      }
      return cur;
    }

    case Op::Or:
    case Op::Cup:
    case Op::Sqcup: {
      how = "reduced to cuts on the two subformulas";
      ProofNode cur = L.kids.at(0);
      for (int slot = 1; slot >= 0; --slot) {
        const ProofNode& S = R.kids.at(static_cast<size_t>(slot));
        const Occurrence occ{false, {slot}};
        const Sequent host_seq = cur.concl;
        DisplayResult res = display_occurrence(host_seq, occ);
        ProofNode dp = unwrap_display(res, std::move(cur));
        Sequent cseq{res.displayed.lhs, S.concl.rhs};
        ProofNode cut = node(cut_name_for(cutf->kids[static_cast<size_t>(slot)]),
                             std::move(cseq), {std::move(dp), S});
        cur = wrap_display_replaced(host_seq, occ, S.concl.rhs, std::move(cut));
      }
      return cur;
    }

    case Op::BoxI:
    case Op::BoxC: {
      // L kid: (GAMMA |- box A); R kid: (A |- X); display A out of the box
      // via the adjunction, cut, and box the result back up.
      how = "reduced to a cut on the boxed subformula";
      const ProofNode& T = L.kids.at(0);
      const ProofNode& S = R.kids.at(0);
      const Occurrence occ{false, {0}};
      DisplayResult res = display_occurrence(T.concl, occ);
      ProofNode dp = unwrap_display(res, T);
      Sequent cseq{res.displayed.lhs, S.concl.rhs};
      ProofNode cut =
          node(cut_name_for(cutf->kids[0]), std::move(cseq), {std::move(dp), S});
      return wrap_display_replaced(T.concl, occ, S.concl.rhs, std::move(cut));
    }

    case Op::DiamI:
    case Op::DiamC: {
      how = "reduced to a cut on the diamonded subformula";
      const ProofNode& T = L.kids.at(0);  // (X |- A)
      const ProofNode& S = R.kids.at(0);  // (diam A |- GAMMA)
      const Occurrence occ{true, {0}};
      DisplayResult res = display_occurrence(S.concl, occ);
      ProofNode dp = unwrap_display(res, S);
      Sequent cseq{T.concl.lhs, res.displayed.rhs};
      ProofNode cut =
          node(cut_name_for(cutf->kids[0]), std::move(cseq), {T, std::move(dp)});
      return wrap_display_replaced(S.concl, occ, T.concl.lhs, std::move(cut));
    }

    case Op::Neg:
    case Op::SimK:
    case Op::MinusK: {
      // Galois-display both premises, cut on the subformula (which swapped
      // sides), and close with a reversed contraposition step.
      how = "reduced via the Galois displays and a contraposition step";
      const ProofNode& T = L.kids.at(0);  // (X |- neg A)
      const ProofNode& S = R.kids.at(0);  // (neg A |- Y)
      DisplayResult resL = display_occurrence(T.concl, {false, {0}});
      DisplayResult resR = display_occurrence(S.concl, {true, {0}});
      ProofNode dpL = unwrap_display(resL, T);
      ProofNode dpR = unwrap_display(resR, S);
      Sequent cseq{resR.displayed.lhs, resL.displayed.rhs};
      ProofNode cut = node(cut_name_for(cutf->kids[0]), std::move(cseq),
                           {std::move(dpR), std::move(dpL)});
      const char* contra =
          cutf->op == Op::Neg ? "cont" : cutf->op == Op::SimK ? "cont_I" : "cont_C";
      return node(contra, concl, {std::move(cut)});
    }

    case Op::CircI:
    case Op::CircC: {
      // Both premises hold the kernel argument under the round embedding;
      // display it on both sides (adjunctions), cut in the kernel type, and
      // close with the evaluation rule.
      how = "reduced to a kernel-type cut under the evaluation rule";
      const ProofNode& T = L.kids.at(0);  // (X |- round alpha)
      const ProofNode& S = R.kids.at(0);  // (round alpha |- Z)
      DisplayResult resL = display_occurrence(T.concl, {false, {0}});
      DisplayResult resR = display_occurrence(S.concl, {true, {0}});
      ProofNode dpL = unwrap_display(resL, T);
      ProofNode dpR = unwrap_display(resR, S);
      Sequent cseq{resL.displayed.lhs, resR.displayed.rhs};
      ProofNode cut = node(cut_name_for(cutf->kids[0]), std::move(cseq),
                           {std::move(dpL), std::move(dpR)});
      const char* eval = cutf->op == Op::CircI ? "diamI_boxI" : "diamC_boxC";
      return node(eval, concl, {std::move(cut)});
    }

    case Op::Atom:
    default:
      throw StuckCut(where, std::string("no principal reduction for '") +
                                op_token(cutf->op) + "'");
  }
}

ProofNode reduce_cut(CalculusId c, const ProofNode& n, const std::vector<int>& where,
                     std::vector<std::string>& trace) {
  const ProofNode& L = n.kids.at(0);
  const ProofNode& R = n.kids.at(1);
  const TermPtr cutf = L.concl.rhs;
  const std::string label =
      ProofError::path_string(where) + " " + n.rule + " on " + render(cutf) + ": ";

  if (L.rule == "Id_D") {
    trace.push_back(label + "the identity premise absorbs the cut");
    return R;
  }
  if (R.rule == "Id_D") {
    trace.push_back(label + "the identity premise absorbs the cut");
    return L;
  }

  Classified cl = classify(c, L, /*succedent=*/true, where);
  Classified cr = classify(c, R, /*succedent=*/false, where);

  ProofNode out = n;
  if (cl.role == Role::Parametric || cr.role == Role::Parametric) {
    const bool left = cl.role == Role::Parametric;
    SpliceSpec sp{c,
                  left,
                  n.rule,
                  cutf,
                  left ? R.concl.rhs : L.concl.lhs,
                  left ? &R : &L,
                  where};
    out = splice(left ? L : R, {Occurrence{!left, {}}}, sp);
    trace.push_back(label + "spliced into the " + (left ? "left" : "right") +
                    " premise (" + std::to_string(sp.inserted) + " cut(s) at introduction sites, " +
                    std::to_string(sp.absorbed) + " identity absorption(s))");
  } else {
    std::string how;
    out = reduce_principal(n.concl, cutf, L, R, where, how);
    trace.push_back(label + "both premises principal; " + how);
  }
  if (!(out.concl == n.concl))
    throw StuckCut(where, "a reduction step changed the conclusion");
  return out;
}

std::optional<std::vector<int>> find_innermost_cut(const ProofNode& n) {
  for (size_t i = 0; i < n.kids.size(); ++i)
    if (auto p = find_innermost_cut(n.kids[i])) {
      p->insert(p->begin(), static_cast<int>(i));
      return p;
    }
  if (is_cut_rule(n.rule)) return std::vector<int>{};
  return std::nullopt;
}

ProofNode* at_path(ProofNode& root, const std::vector<int>& p) {
  ProofNode* n = &root;
  for (int i : p) n = &n->kids.at(static_cast<size_t>(i));
  return n;
}

}  // namespace

bool is_cut_rule(const std::string& rule) {
  return rule == "Cut_D" || rule == "Cut_KI" || rule == "Cut_KC";
}

int count_cuts(const ProofNode& proof) {
  int c = is_cut_rule(proof.rule) ? 1 : 0;
  for (const ProofNode& k : proof.kids) c += count_cuts(k);
  return c;
}

CutElimResult eliminate_cuts(CalculusId c, const ProofNode& proof) {
  CutElimResult out{proof, {}};
  long long steps = 0;
  while (auto p = find_innermost_cut(out.proof)) {
    if (++steps > 100000)
      throw StuckCut(*p, "cut elimination exceeded its step budget");
    ProofNode* n = at_path(out.proof, *p);
    ProofNode repl = reduce_cut(c, *n, *p, out.trace);
    *n = std::move(repl);
  }
  return out;
}

namespace {

void collect_formulas(const TermPtr& t, std::vector<TermPtr>& out) {
  if (is_formula(t)) {
    out.push_back(t);
    return;
  }
  for (const TermPtr& k : t->kids) collect_formulas(k, out);
}

}  // namespace

std::vector<TermPtr> sequent_formulas(const Sequent& s) {
  std::vector<TermPtr> out;
  collect_formulas(s.lhs, out);
  collect_formulas(s.rhs, out);
  return out;
}

bool is_subterm(const TermPtr& needle, const TermPtr& hay) {
  if (term_eq(needle, hay)) return true;
  for (const TermPtr& k : hay->kids)
    if (is_subterm(needle, k)) return true;
  return false;
}

bool satisfies_subformula_property(const ProofNode& proof) {
  const std::vector<TermPtr> ref = sequent_formulas(proof.concl);
  std::vector<const ProofNode*> stack{&proof};
  while (!stack.empty()) {
    const ProofNode* n = stack.back();
    stack.pop_back();
    for (const TermPtr& f : sequent_formulas(n->concl)) {
      bool ok = false;
      for (const TermPtr& g : ref)
        if (is_subterm(f, g)) {
          ok = true;
          break;
        }
      if (!ok) return false;
    }
    for (const ProofNode& k : n->kids) stack.push_back(&k);
  }
  return true;
}

}  // namespace rp

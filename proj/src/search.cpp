#include "roughproof/search.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <utility>

#include "roughproof/check.hpp"

namespace rp {

namespace {

bool has_kernel_negation(CalculusId c) { return c != CalculusId::TQBA; }

TermPtr m1(Op op, TermPtr a) { return mk(op, {std::move(a)}); }
TermPtr m2(Op op, TermPtr a, TermPtr b) { return mk(op, {std::move(a), std::move(b)}); }

int seq_size(const Sequent& s) { return term_size(s.lhs) + term_size(s.rhs); }

ProofNode node(std::string rule, Sequent concl, std::vector<ProofNode> kids = {}) {
  return ProofNode{std::move(rule), std::move(concl), std::move(kids)};
}

}  // namespace

std::string search_status_name(SearchStatus s) {
  switch (s) {
    case SearchStatus::Proved: return "proved";
    case SearchStatus::Exhausted: return "exhausted";
    case SearchStatus::NodeBudget: return "node-budget";
  }
  return "?";
}

bool formula_in_calculus(CalculusId c, const TermPtr& f) {
  if ((f->op == Op::SimK || f->op == Op::MinusK || f->op == Op::TildeSim ||
       f->op == Op::TildeMinus) &&
      !has_kernel_negation(c)) {
    return false;
  }
  for (const auto& k : f->kids) {
    if (!formula_in_calculus(c, k)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Identity expansion
// ---------------------------------------------------------------------------

ProofNode derive_identity(CalculusId c, const TermPtr& f) {
  if (!is_formula(f)) throw std::logic_error("derive_identity: input is not a formula");
  const Sequent id{f, f};
  switch (f->op) {
    case Op::Atom:
      return node("Id_D", id);
    case Op::Top:
      return node("top_L", id, {node("top_R", {mk(Op::HatTop), f})});
    case Op::Bot:
      return node("bot_R", id, {node("bot_L", {f, mk(Op::CheckBot)})});
    case Op::OneI:
      return node("oneI_L", id, {node("oneI_R", {mk(Op::HatOneI), f})});
    case Op::ZeroI:
      return node("zeroI_R", id, {node("zeroI_L", {f, mk(Op::CheckZeroI)})});
    case Op::OneC:
      return node("oneC_L", id, {node("oneC_R", {mk(Op::HatOneC), f})});
    case Op::ZeroC:
      return node("zeroC_R", id, {node("zeroC_L", {f, mk(Op::CheckZeroC)})});
    case Op::Neg: {
      const TermPtr a = f->kids[0];
      ProofNode flipped =
          node("cont", {m1(Op::TildeNeg, a), m1(Op::TildeNeg, a)}, {derive_identity(c, a)});
      ProofNode left = node("neg_L", {f, m1(Op::TildeNeg, a)}, {std::move(flipped)});
      return node("neg_R", id, {std::move(left)});
    }
    case Op::And: {
      const TermPtr a = f->kids[0], b = f->kids[1];
      ProofNode both = node("and_R", {m2(Op::HatAnd, a, b), f},
                            {derive_identity(c, a), derive_identity(c, b)});
      return node("and_L", id, {std::move(both)});
    }
    case Op::Or: {
      const TermPtr a = f->kids[0], b = f->kids[1];
      ProofNode both = node("or_L", {f, m2(Op::CheckOr, a, b)},
                            {derive_identity(c, a), derive_identity(c, b)});
      return node("or_R", id, {std::move(both)});
    }
    case Op::CircI: {
      const TermPtr a = f->kids[0];
      ProofNode emb = node("circI_emb", {m1(Op::TildeCircI, a), m1(Op::TildeCircI, a)},
                           {derive_identity(c, a)});
      ProofNode left = node("circI_L", {f, m1(Op::TildeCircI, a)}, {std::move(emb)});
      return node("circI_R", id, {std::move(left)});
    }
    case Op::CircC: {
      const TermPtr a = f->kids[0];
      ProofNode emb = node("circC_emb", {m1(Op::TildeCircC, a), m1(Op::TildeCircC, a)},
                           {derive_identity(c, a)});
      ProofNode left = node("circC_L", {f, m1(Op::TildeCircC, a)}, {std::move(emb)});
      return node("circC_R", id, {std::move(left)});
    }
    case Op::BoxI: {
      const TermPtr a = f->kids[0];
      ProofNode left = node("boxI_L", {f, m1(Op::CheckBoxI, a)}, {derive_identity(c, a)});
      return node("boxI_R", id, {std::move(left)});
    }
    case Op::DiamI: {
      const TermPtr a = f->kids[0];
      ProofNode right = node("diamI_R", {m1(Op::HatDiamI, a), f}, {derive_identity(c, a)});
      return node("diamI_L", id, {std::move(right)});
    }
    case Op::BoxC: {
      const TermPtr a = f->kids[0];
      ProofNode left = node("boxC_L", {f, m1(Op::CheckBoxC, a)}, {derive_identity(c, a)});
      return node("boxC_R", id, {std::move(left)});
    }
    case Op::DiamC: {
      const TermPtr a = f->kids[0];
      ProofNode right = node("diamC_R", {m1(Op::HatDiamC, a), f}, {derive_identity(c, a)});
      return node("diamC_L", id, {std::move(right)});
    }
    case Op::Cap: {
      const TermPtr a = f->kids[0], b = f->kids[1];
      ProofNode both = node("cap_R", {m2(Op::HatCap, a, b), f},
                            {derive_identity(c, a), derive_identity(c, b)});
      return node("cap_L", id, {std::move(both)});
    }
    case Op::Cup: {
      const TermPtr a = f->kids[0], b = f->kids[1];
      ProofNode both = node("cup_L", {f, m2(Op::CheckCup, a, b)},
                            {derive_identity(c, a), derive_identity(c, b)});
      return node("cup_R", id, {std::move(both)});
    }
    case Op::Sqcap: {
      const TermPtr a = f->kids[0], b = f->kids[1];
      ProofNode both = node("sqcap_R", {m2(Op::HatSqcap, a, b), f},
                            {derive_identity(c, a), derive_identity(c, b)});
      return node("sqcap_L", id, {std::move(both)});
    }
    case Op::Sqcup: {
      const TermPtr a = f->kids[0], b = f->kids[1];
      ProofNode both = node("sqcup_L", {f, m2(Op::CheckSqcup, a, b)},
                            {derive_identity(c, a), derive_identity(c, b)});
      return node("sqcup_R", id, {std::move(both)});
    }
    case Op::SimK: {
      const TermPtr a = f->kids[0];
      ProofNode flipped =
          node("cont_I", {m1(Op::TildeSim, a), m1(Op::TildeSim, a)}, {derive_identity(c, a)});
      ProofNode left = node("sim_L", {f, m1(Op::TildeSim, a)}, {std::move(flipped)});
      return node("sim_R", id, {std::move(left)});
    }
    case Op::MinusK: {
      const TermPtr a = f->kids[0];
      ProofNode flipped =
          node("cont_C", {m1(Op::TildeMinus, a), m1(Op::TildeMinus, a)}, {derive_identity(c, a)});
      ProofNode left = node("minus_L", {f, m1(Op::TildeMinus, a)}, {std::move(flipped)});
      return node("minus_R", id, {std::move(left)});
    }
    default:
      throw std::logic_error("derive_identity: unsupported connective");
  }
}

// ---------------------------------------------------------------------------
// Structural terms vs their operational images
// ---------------------------------------------------------------------------

std::optional<TermPtr> structure_formula(const TermPtr& t) {
  if (op_is_operational(t->op)) return t;
  Op img;
  switch (t->op) {
    case Op::HatTop: img = Op::Top; break;
    case Op::CheckBot: img = Op::Bot; break;
    case Op::HatAnd: img = Op::And; break;
    case Op::CheckOr: img = Op::Or; break;
    case Op::TildeNeg: img = Op::Neg; break;
    case Op::TildeCircI: img = Op::CircI; break;
    case Op::TildeCircC: img = Op::CircC; break;
    case Op::CheckBoxI: img = Op::BoxI; break;
    case Op::HatDiamI: img = Op::DiamI; break;
    case Op::HatOneI: img = Op::OneI; break;
    case Op::CheckZeroI: img = Op::ZeroI; break;
    case Op::HatCap: img = Op::Cap; break;
    case Op::CheckCup: img = Op::Cup; break;
    case Op::TildeSim: img = Op::SimK; break;
    case Op::HatDiamC: img = Op::DiamC; break;
    case Op::CheckBoxC: img = Op::BoxC; break;
    case Op::HatOneC: img = Op::OneC; break;
    case Op::CheckZeroC: img = Op::ZeroC; break;
    case Op::HatSqcap: img = Op::Sqcap; break;
    case Op::CheckSqcup: img = Op::Sqcup; break;
    case Op::TildeMinus: img = Op::MinusK; break;
    default:
      return std::nullopt;  // residual connectives, metavariables
  }
  std::vector<TermPtr> kids;
  kids.reserve(t->kids.size());
  for (const auto& k : t->kids) {
    auto f = structure_formula(k);
    if (!f) return std::nullopt;
    kids.push_back(std::move(*f));
  }
  return mk(img, std::move(kids));
}

std::optional<ProofNode> prove_structure_to_formula(CalculusId c, const TermPtr& s) {
  auto fo = structure_formula(s);
  if (!fo || !formula_in_calculus(c, *fo)) return std::nullopt;
  const TermPtr f = *fo;
  if (op_is_operational(s->op)) return derive_identity(c, s);
  switch (s->op) {
    case Op::HatTop:
      return node("top_R", {s, f});
    case Op::HatOneI:
      return node("oneI_R", {s, f});
    case Op::HatOneC:
      return node("oneC_R", {s, f});
    case Op::HatAnd: {
      auto l = prove_structure_to_formula(c, s->kids[0]);
      auto r = prove_structure_to_formula(c, s->kids[1]);
      if (!l || !r) return std::nullopt;
      return node("and_R", {s, f}, {std::move(*l), std::move(*r)});
    }
    case Op::HatCap: {
      auto l = prove_structure_to_formula(c, s->kids[0]);
      auto r = prove_structure_to_formula(c, s->kids[1]);
      if (!l || !r) return std::nullopt;
      return node("cap_R", {s, f}, {std::move(*l), std::move(*r)});
    }
    case Op::HatSqcap: {
      auto l = prove_structure_to_formula(c, s->kids[0]);
      auto r = prove_structure_to_formula(c, s->kids[1]);
      if (!l || !r) return std::nullopt;
      return node("sqcap_R", {s, f}, {std::move(*l), std::move(*r)});
    }
    case Op::TildeNeg: {
      auto inner = prove_formula_to_structure(c, s->kids[0]);
      if (!inner) return std::nullopt;
      ProofNode flipped = node("cont", {s, m1(Op::TildeNeg, f->kids[0])}, {std::move(*inner)});
      return node("neg_R", {s, f}, {std::move(flipped)});
    }
    case Op::TildeSim: {
      auto inner = prove_formula_to_structure(c, s->kids[0]);
      if (!inner) return std::nullopt;
      ProofNode flipped = node("cont_I", {s, m1(Op::TildeSim, f->kids[0])}, {std::move(*inner)});
      return node("sim_R", {s, f}, {std::move(flipped)});
    }
    case Op::TildeMinus: {
      auto inner = prove_formula_to_structure(c, s->kids[0]);
      if (!inner) return std::nullopt;
      ProofNode flipped = node("cont_C", {s, m1(Op::TildeMinus, f->kids[0])}, {std::move(*inner)});
      return node("minus_R", {s, f}, {std::move(flipped)});
    }
    case Op::HatDiamI: {
      auto inner = prove_structure_to_formula(c, s->kids[0]);
      if (!inner) return std::nullopt;
      return node("diamI_R", {s, f}, {std::move(*inner)});
    }
    case Op::HatDiamC: {
      auto inner = prove_structure_to_formula(c, s->kids[0]);
      if (!inner) return std::nullopt;
      return node("diamC_R", {s, f}, {std::move(*inner)});
    }
    case Op::TildeCircI: {
      auto inner = prove_structure_to_formula(c, s->kids[0]);
      if (!inner) return std::nullopt;
      ProofNode emb =
          node("circI_emb", {s, m1(Op::TildeCircI, f->kids[0])}, {std::move(*inner)});
      return node("circI_R", {s, f}, {std::move(emb)});
    }
    case Op::TildeCircC: {
      auto inner = prove_structure_to_formula(c, s->kids[0]);
      if (!inner) return std::nullopt;
      ProofNode emb =
          node("circC_emb", {s, m1(Op::TildeCircC, f->kids[0])}, {std::move(*inner)});
      return node("circC_R", {s, f}, {std::move(emb)});
    }
    default:
      // ⊥̌-style constants, ∨̌/∪̌/⊔̌, ■̌, residuals: no collapse on the left.
      return std::nullopt;
  }
}

std::optional<ProofNode> prove_formula_to_structure(CalculusId c, const TermPtr& s) {
  auto fo = structure_formula(s);
  if (!fo || !formula_in_calculus(c, *fo)) return std::nullopt;
  const TermPtr f = *fo;
  if (op_is_operational(s->op)) return derive_identity(c, s);
  switch (s->op) {
    case Op::CheckBot:
      return node("bot_L", {f, s});
    case Op::CheckZeroI:
      return node("zeroI_L", {f, s});
    case Op::CheckZeroC:
      return node("zeroC_L", {f, s});
    case Op::CheckOr: {
      auto l = prove_formula_to_structure(c, s->kids[0]);
      auto r = prove_formula_to_structure(c, s->kids[1]);
      if (!l || !r) return std::nullopt;
      return node("or_L", {f, s}, {std::move(*l), std::move(*r)});
    }
    case Op::CheckCup: {
      auto l = prove_formula_to_structure(c, s->kids[0]);
      auto r = prove_formula_to_structure(c, s->kids[1]);
      if (!l || !r) return std::nullopt;
      return node("cup_L", {f, s}, {std::move(*l), std::move(*r)});
    }
    case Op::CheckSqcup: {
      auto l = prove_formula_to_structure(c, s->kids[0]);
      auto r = prove_formula_to_structure(c, s->kids[1]);
      if (!l || !r) return std::nullopt;
      return node("sqcup_L", {f, s}, {std::move(*l), std::move(*r)});
    }
    case Op::TildeNeg: {
      auto inner = prove_structure_to_formula(c, s->kids[0]);
      if (!inner) return std::nullopt;
      ProofNode flipped = node("cont", {m1(Op::TildeNeg, f->kids[0]), s}, {std::move(*inner)});
      return node("neg_L", {f, s}, {std::move(flipped)});
    }
    case Op::TildeSim: {
      auto inner = prove_structure_to_formula(c, s->kids[0]);
      if (!inner) return std::nullopt;
      ProofNode flipped = node("cont_I", {m1(Op::TildeSim, f->kids[0]), s}, {std::move(*inner)});
      return node("sim_L", {f, s}, {std::move(flipped)});
    }
    case Op::TildeMinus: {
      auto inner = prove_structure_to_formula(c, s->kids[0]);
      if (!inner) return std::nullopt;
      ProofNode flipped =
          node("cont_C", {m1(Op::TildeMinus, f->kids[0]), s}, {std::move(*inner)});
      return node("minus_L", {f, s}, {std::move(flipped)});
    }
    case Op::CheckBoxI: {
      auto inner = prove_formula_to_structure(c, s->kids[0]);
      if (!inner) return std::nullopt;
      return node("boxI_L", {f, s}, {std::move(*inner)});
    }
    case Op::CheckBoxC: {
      auto inner = prove_formula_to_structure(c, s->kids[0]);
      if (!inner) return std::nullopt;
      return node("boxC_L", {f, s}, {std::move(*inner)});
    }
    case Op::TildeCircI: {
      auto inner = prove_formula_to_structure(c, s->kids[0]);
      if (!inner) return std::nullopt;
      ProofNode emb =
          node("circI_emb", {m1(Op::TildeCircI, f->kids[0]), s}, {std::move(*inner)});
      return node("circI_L", {f, s}, {std::move(emb)});
    }
    case Op::TildeCircC: {
      auto inner = prove_formula_to_structure(c, s->kids[0]);
      if (!inner) return std::nullopt;
      ProofNode emb =
          node("circC_emb", {m1(Op::TildeCircC, f->kids[0]), s}, {std::move(*inner)});
      return node("circC_L", {f, s}, {std::move(emb)});
    }
    default:
      // ⊤̂-style constants, ∧̂/∩̂/⊓̂, ♦̂, residuals: no expansion on the right.
      return std::nullopt;
  }
}

// ---------------------------------------------------------------------------
// Macro moves: kernel-embedding distribution with one analytic cut
// ---------------------------------------------------------------------------

namespace {

struct Move {
  std::vector<Sequent> subgoals;
  std::function<ProofNode(std::vector<ProofNode>)> build;
  int size_delta = 0;  // max subgoal size minus goal size; sort key
};

Move make_move(const Sequent& goal, std::vector<Sequent> subgoals,
               std::function<ProofNode(std::vector<ProofNode>)> build) {
  Move m{std::move(subgoals), std::move(build), 0};
  int worst = 0;
  for (const auto& sg : m.subgoals) worst = std::max(worst, seq_size(sg));
  m.size_delta = worst - seq_size(goal);
  return m;
}

// A "kernel disjunct/conjunct": either an embedding formula ∘α or a
// structural embedding ∘̃Δ whose body has an operational image. Returns the
// body formula δ together with a proof of  ∘̃δ ⊢ C  (for joins) or
// C ⊢ ∘̃δ  (for meets).
struct KernelPiece {
  TermPtr body;     // formula in the kernel sort
  ProofNode proof;  // links ∘̃(body) with the original piece
};

std::optional<KernelPiece> kernel_piece_join(CalculusId c, const TermPtr& C, Op formula_circ,
                                             Op struct_circ, const char* emb_rule,
                                             const char* right_rule) {
  if (C->op == formula_circ) {
    const TermPtr d = C->kids[0];
    if (!formula_in_calculus(c, d)) return std::nullopt;
    ProofNode emb =
        node(emb_rule, {m1(struct_circ, d), m1(struct_circ, d)}, {derive_identity(c, d)});
    return KernelPiece{d, node(right_rule, {m1(struct_circ, d), C}, {std::move(emb)})};
  }
  if (C->op == struct_circ) {
    auto d = structure_formula(C->kids[0]);
    if (!d) return std::nullopt;
    auto inner = prove_formula_to_structure(c, C->kids[0]);
    if (!inner) return std::nullopt;
    return KernelPiece{*d, node(emb_rule, {m1(struct_circ, *d), C}, {std::move(*inner)})};
  }
  return std::nullopt;
}

std::optional<KernelPiece> kernel_piece_meet(CalculusId c, const TermPtr& C, Op formula_circ,
                                             Op struct_circ, const char* emb_rule,
                                             const char* left_rule) {
  if (C->op == formula_circ) {
    const TermPtr d = C->kids[0];
    if (!formula_in_calculus(c, d)) return std::nullopt;
    ProofNode emb =
        node(emb_rule, {m1(struct_circ, d), m1(struct_circ, d)}, {derive_identity(c, d)});
    return KernelPiece{d, node(left_rule, {C, m1(struct_circ, d)}, {std::move(emb)})};
  }
  if (C->op == struct_circ) {
    auto d = structure_formula(C->kids[0]);
    if (!d) return std::nullopt;
    auto inner = prove_structure_to_formula(c, C->kids[0]);
    if (!inner) return std::nullopt;
    return KernelPiece{*d, node(emb_rule, {C, m1(struct_circ, *d)}, {std::move(*inner)})};
  }
  return std::nullopt;
}

// Goal  X ⊢ C1 ∨̌ C2  with each Ci an embedding piece: reduce to
// X ⊢ ∘(δ1 ∪ δ2), cutting on that formula. The cut's right premise
// ∘(δ1 ∪ δ2) ⊢ C1 ∨̌ C2 is assembled from weakening, the adjunction, the
// fused ∪-introduction and contraction.
struct CircShape {
  Op formula_circ, struct_circ, cup, check_cup, check_box;
  const char* emb;
  const char* right_intro;  // circI_R / circC_R
  const char* left_intro;   // circI_L / circC_L
  const char* adjunction;   // ad_DKI / ad_DKC
  const char* cup_left;     // cup_L / sqcup_L
  const char* contraction;  // C_KI / C_KC
  Op cap, hat_cap, hat_diam;
  const char* cap_right;  // cap_R / sqcap_R
};

const CircShape kShapeI{Op::CircI,    Op::TildeCircI, Op::Cup,  Op::CheckCup, Op::CheckBoxI,
                        "circI_emb",  "circI_R",      "circI_L", "ad_DKI",    "cup_L",
                        "C_KI",       Op::Cap,        Op::HatCap, Op::HatDiamI, "cap_R"};
const CircShape kShapeC{Op::CircC,    Op::TildeCircC, Op::Sqcup, Op::CheckSqcup, Op::CheckBoxC,
                        "circC_emb",  "circC_R",      "circC_L", "ad_DKC",      "sqcup_L",
                        "C_KC",       Op::Sqcap,      Op::HatSqcap, Op::HatDiamC, "sqcap_R"};

std::optional<Move> macro_join(CalculusId c, const Sequent& goal, const CircShape& sh) {
  if (goal.rhs->op != Op::CheckOr) return std::nullopt;
  const TermPtr C1 = goal.rhs->kids[0], C2 = goal.rhs->kids[1];
  auto p1 = kernel_piece_join(c, C1, sh.formula_circ, sh.struct_circ, sh.emb, sh.right_intro);
  auto p2 = kernel_piece_join(c, C2, sh.formula_circ, sh.struct_circ, sh.emb, sh.right_intro);
  if (!p1 || !p2) return std::nullopt;
  const TermPtr vee = goal.rhs;
  const TermPtr join = m2(sh.cup, p1->body, p2->body);
  const TermPtr cutf = m1(sh.formula_circ, join);
  const TermPtr boxed = m1(sh.check_box, vee);

  ProofNode w1 = node("W_D", {m1(sh.struct_circ, p1->body), vee}, {p1->proof});
  ProofNode t1 = node(sh.adjunction, {p1->body, boxed}, {std::move(w1)});
  ProofNode w2 =
      node("W_D", {m1(sh.struct_circ, p2->body), m2(Op::CheckOr, C2, C1)}, {p2->proof});
  ProofNode e2 = node("E_D", {m1(sh.struct_circ, p2->body), vee}, {std::move(w2)});
  ProofNode t2 = node(sh.adjunction, {p2->body, boxed}, {std::move(e2)});
  ProofNode fused = node(sh.cup_left, {join, m2(sh.check_cup, boxed, boxed)},
                         {std::move(t1), std::move(t2)});
  ProofNode contracted = node(sh.contraction, {join, boxed}, {std::move(fused)});
  ProofNode adj = node(sh.adjunction, {m1(sh.struct_circ, join), vee}, {std::move(contracted)});
  ProofNode chain = node(sh.left_intro, {cutf, vee}, {std::move(adj)});

  Sequent sub{goal.lhs, cutf};
  auto build = [goal, chain = std::move(chain)](std::vector<ProofNode> kids) {
    return node("Cut_D", goal, {std::move(kids[0]), chain});
  };
  return make_move(goal, {std::move(sub)}, std::move(build));
}

std::optional<Move> macro_meet(CalculusId c, const Sequent& goal, const CircShape& sh) {
  if (goal.lhs->op != Op::HatAnd) return std::nullopt;
  const TermPtr C1 = goal.lhs->kids[0], C2 = goal.lhs->kids[1];
  auto p1 = kernel_piece_meet(c, C1, sh.formula_circ, sh.struct_circ, sh.emb, sh.left_intro);
  auto p2 = kernel_piece_meet(c, C2, sh.formula_circ, sh.struct_circ, sh.emb, sh.left_intro);
  if (!p1 || !p2) return std::nullopt;
  const TermPtr wedge = goal.lhs;
  const TermPtr meet = m2(sh.cap, p1->body, p2->body);
  const TermPtr cutf = m1(sh.formula_circ, meet);
  const TermPtr diam = m1(sh.hat_diam, wedge);

  ProofNode w1 = node("W_D", {wedge, m1(sh.struct_circ, p1->body)}, {p1->proof});
  ProofNode t1 = node(sh.adjunction, {diam, p1->body}, {std::move(w1)});
  ProofNode w2 =
      node("W_D", {m2(Op::HatAnd, C2, C1), m1(sh.struct_circ, p2->body)}, {p2->proof});
  ProofNode e2 = node("E_D", {wedge, m1(sh.struct_circ, p2->body)}, {std::move(w2)});
  ProofNode t2 = node(sh.adjunction, {diam, p2->body}, {std::move(e2)});
  ProofNode fused =
      node(sh.cap_right, {m2(sh.hat_cap, diam, diam), meet}, {std::move(t1), std::move(t2)});
  ProofNode contracted = node(sh.contraction, {diam, meet}, {std::move(fused)});
  ProofNode adj = node(sh.adjunction, {wedge, m1(sh.struct_circ, meet)}, {std::move(contracted)});
  ProofNode chain = node(sh.right_intro, {wedge, cutf}, {std::move(adj)});

  Sequent sub{cutf, goal.rhs};
  auto build = [goal, chain = std::move(chain)](std::vector<ProofNode> kids) {
    return node("Cut_D", goal, {chain, std::move(kids[0])});
  };
  return make_move(goal, {std::move(sub)}, std::move(build));
}

// ---------------------------------------------------------------------------
// Move generation
// ---------------------------------------------------------------------------

// Rules never applied as standalone backward moves. Exchange and
// associativity are absorbed into the AC-normalized visited keys and into
// display moves; contraction only appears fused with the additive rules;
// the two counit rules match any sequent backward and only ever expand.
bool excluded_structural(const std::string& name) {
  return name == "E_D" || name == "E_KI" || name == "E_KC" || name == "A_D" ||
         name == "A_KI" || name == "A_KC" || name == "C_D" || name == "C_KI" ||
         name == "C_KC" || name == "diamI_boxI" || name == "diamC_boxC";
}

void collect_display_paths(const TermPtr& t, Path& cur, std::vector<Path>& out) {
  if (op_is_operational(t->op) || t->op == Op::MetaVar) return;
  for (int i = 0; i < static_cast<int>(t->kids.size()); ++i) {
    cur.push_back(i);
    out.push_back(cur);
    collect_display_paths(t->kids[i], cur, out);
    cur.pop_back();
  }
}

// The unit rules' conclusion schema matches every sequent, so running them
// backward from the conclusion (introducing the unit) floods the search with
// expansions. Their only productive use — closing against a weakened lattice
// constant — is packaged as a dedicated closing move instead; the absorbing
// reverse direction stays available through the bidirectional scan.
bool is_unit_rule(const std::string& name) {
  return name == "unit_top" || name == "unit_bot" || name == "unit_1I" ||
         name == "unit_0I" || name == "unit_1C" || name == "unit_0C";
}

bool is_ac_cluster(Op op) {
  return op == Op::HatAnd || op == Op::CheckOr || op == Op::HatCap ||
         op == Op::CheckCup || op == Op::HatSqcap || op == Op::CheckSqcup;
}

const char* exchange_rule_for(Op op) {
  switch (op) {
    case Op::HatAnd:
    case Op::CheckOr: return "E_D";
    case Op::HatCap:
    case Op::CheckCup: return "E_KI";
    default: return "E_KC";
  }
}

TermPtr swap_cluster(const TermPtr& t) { return m2(t->op, t->kids[1], t->kids[0]); }

// The goal together with its top-level commutations (bit 0: left side
// swapped, bit 1: right side swapped). Rules are matched against every
// variant so that position-sensitive schemas see both component orders; the
// builder reinserts the corresponding exchange steps.
struct ACVariant {
  Sequent seq;
  int flags;
};

std::vector<ACVariant> ac_variants(const Sequent& goal) {
  std::vector<ACVariant> v{{goal, 0}};
  const bool l = is_ac_cluster(goal.lhs->op);
  const bool r = is_ac_cluster(goal.rhs->op);
  if (l) v.push_back({Sequent{swap_cluster(goal.lhs), goal.rhs}, 1});
  if (r) v.push_back({Sequent{goal.lhs, swap_cluster(goal.rhs)}, 2});
  if (l && r) v.push_back({Sequent{swap_cluster(goal.lhs), swap_cluster(goal.rhs)}, 3});
  return v;
}

// Wraps a proof of the swapped variant back into a proof of the goal.
ProofNode unswap(const Sequent& goal, int flags, ProofNode inner) {
  ProofNode cur = std::move(inner);
  if (flags & 2) {
    Sequent mid{(flags & 1) ? swap_cluster(goal.lhs) : goal.lhs, goal.rhs};
    cur = node(exchange_rule_for(goal.rhs->op), mid, {std::move(cur)});
  }
  if (flags & 1) cur = node(exchange_rule_for(goal.lhs->op), goal, {std::move(cur)});
  return cur;
}

void add_rule_moves(CalculusId c, const Sequent& goal, std::vector<Move>& out) {
  const std::vector<ACVariant> variants = ac_variants(goal);
  for (const Rule* r : rule_set(c)) {
    if (r->kind == RuleKind::Cut) continue;
    if (r->kind == RuleKind::Display) continue;  // handled via display moves
    if (r->kind == RuleKind::Structural && excluded_structural(r->name)) continue;

    for (const ACVariant& v : variants) {
      // Backward from the conclusion schema.
      if (!is_unit_rule(r->name)) {
        for (const Subst& s : match_schema(*r, v.seq)) {
          std::vector<Sequent> subs;
          subs.reserve(r->premises.size());
          for (const auto& p : r->premises) subs.push_back(apply_subst(p, s));
          std::string name = r->name;
          Sequent vseq = v.seq;
          int flags = v.flags;
          out.push_back(make_move(goal, std::move(subs),
                                  [name, goal, vseq, flags](std::vector<ProofNode> kids) {
                                    return unswap(goal, flags, node(name, vseq, std::move(kids)));
                                  }));
        }
      }
      // Bidirectional rules also run premise-to-conclusion backward, but
      // only when that direction does not grow the sequent (the growing
      // reverses — double negation introduction, embedding raises — only
      // undo shrinking moves and explode the space).
      if (r->bidirectional && r->premises.size() == 1) {
        Subst s;
        if (match_sequent(r->premises[0], v.seq, s)) {
          Sequent sub = apply_subst(r->conclusion, s);
          if (seq_size(sub) <= seq_size(goal)) {
            std::string name = r->name;
            Sequent vseq = v.seq;
            int flags = v.flags;
            out.push_back(make_move(goal, {std::move(sub)},
                                    [name, goal, vseq, flags](std::vector<ProofNode> kids) {
                                      return unswap(goal, flags,
                                                    node(name, vseq, {std::move(kids[0])}));
                                    }));
          }
        }
      }
    }
  }
}

struct WeakenedAxiom {
  Op constant;     // the principal operational constant
  bool on_rhs;     // which side it closes on
  Op struct_const; // its structural twin
  Op cluster;      // duplicating structural connective
  const char* axiom;
  const char* weaken;
  const char* exchange;
  const char* unit;
};

const WeakenedAxiom kWeakenedAxioms[] = {
    {Op::Top, true, Op::HatTop, Op::HatAnd, "top_R", "W_D", "E_D", "unit_top"},
    {Op::Bot, false, Op::CheckBot, Op::CheckOr, "bot_L", "W_D", "E_D", "unit_bot"},
    {Op::OneI, true, Op::HatOneI, Op::HatCap, "oneI_R", "W_KI", "E_KI", "unit_1I"},
    {Op::ZeroI, false, Op::CheckZeroI, Op::CheckCup, "zeroI_L", "W_KI", "E_KI", "unit_0I"},
    {Op::OneC, true, Op::HatOneC, Op::HatSqcap, "oneC_R", "W_KC", "E_KC", "unit_1C"},
    {Op::ZeroC, false, Op::CheckZeroC, Op::CheckSqcup, "zeroC_L", "W_KC", "E_KC", "unit_0C"},
};

// Closing moves for goals whose one side is a lattice-constant formula: the
// axiom instance is weakened into place and the unit absorbed, e.g.
// X ⊢ ⊤ closes as unit(exchange(weaken(⊤̂ ⊢ ⊤))).
void add_weakened_axiom_moves(const Sequent& goal, std::vector<Move>& out) {
  for (const WeakenedAxiom& wa : kWeakenedAxioms) {
    const TermPtr& main = wa.on_rhs ? goal.rhs : goal.lhs;
    const TermPtr& ctx = wa.on_rhs ? goal.lhs : goal.rhs;
    if (main->op != wa.constant) continue;
    const TermPtr sc = mk(wa.struct_const);
    if (wa.on_rhs && term_eq(ctx, sc)) continue;  // the plain axiom applies
    if (!wa.on_rhs && term_eq(ctx, sc)) continue;
    Sequent axiom_seq = wa.on_rhs ? Sequent{sc, main} : Sequent{main, sc};
    Sequent weakened = wa.on_rhs ? Sequent{m2(wa.cluster, sc, ctx), main}
                                 : Sequent{main, m2(wa.cluster, sc, ctx)};
    Sequent exchanged = wa.on_rhs ? Sequent{m2(wa.cluster, ctx, sc), main}
                                  : Sequent{main, m2(wa.cluster, ctx, sc)};
    WeakenedAxiom w = wa;
    out.push_back(make_move(
        goal, {}, [w, goal, axiom_seq, weakened, exchanged](std::vector<ProofNode>) {
          ProofNode ax = node(w.axiom, axiom_seq);
          ProofNode wk = node(w.weaken, weakened, {std::move(ax)});
          ProofNode ex = node(w.exchange, exchanged, {std::move(wk)});
          return node(w.unit, goal, {std::move(ex)});
        }));
  }
}

struct FusedShape {
  Op main;          // principal connective
  bool on_rhs;      // principal side
  Op struct_op;     // duplicated structural connective
  const char* rule;
  const char* contraction;
};

const FusedShape kFused[] = {
    {Op::And, true, Op::HatAnd, "and_R", "C_D"},
    {Op::Or, false, Op::CheckOr, "or_L", "C_D"},
    {Op::Cap, true, Op::HatCap, "cap_R", "C_KI"},
    {Op::Cup, false, Op::CheckCup, "cup_L", "C_KI"},
    {Op::Sqcap, true, Op::HatSqcap, "sqcap_R", "C_KC"},
    {Op::Sqcup, false, Op::CheckSqcup, "sqcup_L", "C_KC"},
};

void add_fused_moves(const Sequent& goal, std::vector<Move>& out) {
  for (const FusedShape& fs : kFused) {
    const TermPtr& main = fs.on_rhs ? goal.rhs : goal.lhs;
    const TermPtr& ctx = fs.on_rhs ? goal.lhs : goal.rhs;
    if (main->op != fs.main) continue;
    const TermPtr a = main->kids[0], b = main->kids[1];
    std::vector<Sequent> subs;
    if (fs.on_rhs) {
      subs = {Sequent{ctx, a}, Sequent{ctx, b}};
    } else {
      subs = {Sequent{a, ctx}, Sequent{b, ctx}};
    }
    Sequent inner_concl = fs.on_rhs ? Sequent{m2(fs.struct_op, ctx, ctx), main}
                                    : Sequent{main, m2(fs.struct_op, ctx, ctx)};
    std::string rule = fs.rule, contraction = fs.contraction;
    out.push_back(make_move(
        goal, std::move(subs),
        [rule, contraction, goal, inner_concl](std::vector<ProofNode> kids) {
          ProofNode inner = node(rule, inner_concl, std::move(kids));
          return node(contraction, goal, {std::move(inner)});
        }));
  }
}

void add_display_moves(const Sequent& goal, std::vector<Move>& out) {
  for (bool on_lhs : {true, false}) {
    std::vector<Path> paths;
    Path cur;
    collect_display_paths(on_lhs ? goal.lhs : goal.rhs, cur, paths);
    for (const Path& p : paths) {
      DisplayResult res;
      try {
        res = display_occurrence(goal, Occurrence{on_lhs, p});
      } catch (const NotDisplayable&) {
        continue;
      }
      Sequent sub = res.displayed;
      out.push_back(make_move(goal, {std::move(sub)},
                              [res](std::vector<ProofNode> kids) {
                                return wrap_display(res, std::move(kids[0]));
                              }));
    }
  }
}

std::vector<Move> gen_moves(CalculusId c, const Sequent& goal) {
  std::vector<Move> out;

  // Closing moves first: the scan below finds the zero-premise rules, and a
  // shared formula on both sides closes via identity expansion.
  if (is_formula(goal.lhs) && term_eq(goal.lhs, goal.rhs) && formula_in_calculus(c, goal.lhs)) {
    TermPtr f = goal.lhs;
    out.push_back(make_move(goal, {}, [c, f](std::vector<ProofNode>) {
      return derive_identity(c, f);
    }));
  }

  add_weakened_axiom_moves(goal, out);
  add_rule_moves(c, goal, out);
  add_fused_moves(goal, out);
  if (auto m = macro_join(c, goal, kShapeI)) out.push_back(std::move(*m));
  if (auto m = macro_join(c, goal, kShapeC)) out.push_back(std::move(*m));
  if (auto m = macro_meet(c, goal, kShapeI)) out.push_back(std::move(*m));
  if (auto m = macro_meet(c, goal, kShapeC)) out.push_back(std::move(*m));
  add_display_moves(goal, out);

  // Shrinking moves before size-preserving ones before expansions (counit
  // introductions, contraposition expansion, weakening-in-reverse).
  std::stable_sort(out.begin(), out.end(),
                   [](const Move& a, const Move& b) { return a.size_delta < b.size_delta; });
  return out;
}

// ---------------------------------------------------------------------------
// Iterative-deepening driver
// ---------------------------------------------------------------------------

struct SearchCtx {
  CalculusId calc;
  SearchBudget budget;
  int size_cap = 0;
  long long nodes = 0;
  long long memo_hits = 0;
  long long path_prunes = 0;
  bool node_overrun = false;
  // key -> largest remaining depth at which the goal was fully explored and
  // failed; valid across iterations because deeper attempts re-explore.
  std::unordered_map<std::string, int> fail_memo;
  std::unordered_set<std::string> on_path;
};

std::string goal_key(const Sequent& s) { return render(normalize(s, /*full=*/false)); }

std::optional<ProofNode> dfs(SearchCtx& cx, const Sequent& goal, int remaining) {
  if (cx.nodes >= cx.budget.max_nodes) {
    cx.node_overrun = true;
    return std::nullopt;
  }
  ++cx.nodes;
  const std::string key = goal_key(goal);
  if (auto it = cx.fail_memo.find(key); it != cx.fail_memo.end() && it->second >= remaining) {
    ++cx.memo_hits;
    return std::nullopt;
  }
  if (cx.on_path.count(key)) {
    ++cx.path_prunes;
    return std::nullopt;
  }

  const long long prunes_before = cx.path_prunes;
  std::optional<ProofNode> found;
  cx.on_path.insert(key);
  for (Move& mv : gen_moves(cx.calc, goal)) {
    if (!mv.subgoals.empty()) {
      if (remaining <= 0) continue;
      bool oversize = false;
      for (const Sequent& sg : mv.subgoals) {
        if (seq_size(sg) > cx.size_cap) {
          oversize = true;
          break;
        }
      }
      if (oversize) continue;
    }
    std::vector<ProofNode> kids;
    kids.reserve(mv.subgoals.size());
    bool ok = true;
    for (const Sequent& sg : mv.subgoals) {
      auto sub = dfs(cx, sg, remaining - 1);
      if (!sub) {
        ok = false;
        break;
      }
      kids.push_back(std::move(*sub));
    }
    if (ok) {
      found = mv.build(std::move(kids));
      break;
    }
    if (cx.node_overrun) break;
  }
  cx.on_path.erase(key);

  if (found) return found;
  // Record failure only when the subtree was fully explored and no branch
  // was pruned against an ancestor (such failures are path-dependent).
  if (!cx.node_overrun && cx.path_prunes == prunes_before) {
    int& slot = cx.fail_memo[key];
    slot = std::max(slot, remaining);
  }
  return std::nullopt;
}

}  // namespace

SearchResult prove(CalculusId c, const Sequent& goal, const SearchBudget& budget) {
  SearchCtx cx;
  cx.calc = c;
  cx.budget = budget;
  cx.size_cap = seq_size(goal) + 2 * budget.max_depth + 8;

  SearchResult res;
  res.status = SearchStatus::Exhausted;
  for (int depth = 0; depth <= budget.max_depth; ++depth) {
    auto p = dfs(cx, goal, depth);
    res.stats.depth_reached = depth;
    if (p) {
      res.status = SearchStatus::Proved;
      res.proof = std::move(*p);
      break;
    }
    if (cx.node_overrun) {
      res.status = SearchStatus::NodeBudget;
      break;
    }
  }
  res.stats.nodes = cx.nodes;
  res.stats.memo_hits = cx.memo_hits;
  return res;
}

}  // namespace rp

// Cut elimination.
//
// eliminate_cuts rewrites an innermost cut (one with no cut above it) until
// none remain, recording one trace line per rewrite:
//
//  - an identity-axiom premise absorbs the cut (the other premise already
//    proves the conclusion);
//  - if a premise is parametric -- the last rule of that premise carries the
//    cut formula as (part of) a lone schema metavariable on the displayed
//    side -- the cut is spliced into that premise: the congruent copies of
//    the cut formula are traced upward through the schema substitution of
//    each rule, vanish where a weakening drops the carrying metavariable,
//    duplicate where a contraction repeats it, turn into the other premise at
//    identity leaves, and become smaller cuts exactly at the nodes that
//    introduce the formula (where it is displayed, so the cut attaches
//    directly).  Rule-by-rule permutation is a non-starter here: permuting a
//    cut through a display step re-displays the formula via that same step
//    and reproduces the original cut verbatim, so the splice jumps over whole
//    display segments instead;
//  - when both premises introduce the cut formula's outermost connective
//    (both principal), a connective-specific reduction replaces the cut by
//    cuts on the immediate subformulas: lattice connectives re-display each
//    subformula out of the single-premise side's context; the negation
//    families cut between the two Galois-displayed premises and close with a
//    reversed contraposition step; the box/diamond families cut under one
//    adjunction display; the round (composite) connectives cut in the kernel
//    type and close with the evaluation rule diamI_boxI / diamC_boxC;
//    constants vanish into the non-axiom premise.
//
// The cut formula shrinks at principal steps and splices only insert cuts
// whose premises introduce the formula, so the loop terminates; a generous
// step guard converts any construction bug into StuckCut instead of a hang.

#pragma once

#include "roughproof/check.hpp"

namespace rp {

struct StuckCut : std::runtime_error {
  std::vector<int> path;  // child indices from the proof root to the cut
  StuckCut(std::vector<int> p, const std::string& msg)
      : std::runtime_error(msg + " (at proof path " + ProofError::path_string(p) + ")"),
        path(std::move(p)) {}
};

struct CutElimResult {
  ProofNode proof;                 // same conclusion, no Cut_D/Cut_KI/Cut_KC nodes
  std::vector<std::string> trace;  // one line per rewrite, in application order
};

bool is_cut_rule(const std::string& rule);
int count_cuts(const ProofNode& proof);

// Rewrites until cut-free.  The input must check in calculus `c`; the result
// checks in `c` and has the same conclusion.  Throws StuckCut if a rewrite
// cannot be applied (which indicates an invalid input proof or a rule set the
// reductions do not cover).
CutElimResult eliminate_cuts(CalculusId c, const ProofNode& proof);

// --- subformula inspection (for auditing cut-free proofs) ---

// Maximal formula subterms of both sides (each formula reported once per
// occurrence, outermost only; structural constants are not formulas).
std::vector<TermPtr> sequent_formulas(const Sequent& s);
// True iff `needle` occurs in `hay` (as a subtree, at any depth).
bool is_subterm(const TermPtr& needle, const TermPtr& hay);
// True iff every formula occurring anywhere in the proof is a subterm of
// some formula of the root conclusion.  Holds for cut-free proofs produced
// by eliminate_cuts; fails for most proofs with cuts, whose cut formulas are
// foreign to the end sequent.
bool satisfies_subformula_property(const ProofNode& proof);

}  // namespace rp

// Proof checking and the display property.
//
// check_proof validates a parsed proof tree bottom-up against a calculus:
// each node's rule name is resolved to catalog entries; an entry (in either
// orientation for double-line rules) must match the node's conclusion and the
// node's children's conclusions under one substitution. Errors carry the path
// of child indices from the root of the proof tree.
//
// display_occurrence isolates a substructure occurrence as the whole
// antecedent or succedent using display rules (residuation, Galois and
// adjunction families), interleaving exchange steps where an occurrence sits
// in the left slot of a binary structural connective. It returns the chain of
// one-premise steps from the original sequent up to the displayed one; each
// step is itself checkable, and wrap_display rebuilds the corresponding proof
// segment.

#pragma once

#include <stdexcept>

#include "roughproof/parser.hpp"
#include "roughproof/rules.hpp"

namespace rp {

struct ProofError : std::runtime_error {
  std::vector<int> path;  // child indices from the proof root
  ProofError(std::vector<int> p, const std::string& msg)
      : std::runtime_error(msg + " (at proof path " + path_string(p) + ")"),
        path(std::move(p)) {}
  static std::string path_string(const std::vector<int>& p) {
    std::string s = "[";
    for (size_t i = 0; i < p.size(); ++i) {
      if (i) s += ' ';
      s += std::to_string(p[i]);
    }
    return s + "]";
  }
};

// Validates the proof in the given calculus; throws ProofError or UnknownRule
// on the first defect (leftmost-innermost conclusion-first order).
void check_proof(CalculusId c, const ProofNode& proof);

// Non-throwing wrapper: nullopt when valid, otherwise the error message.
std::optional<std::string> check_proof_error(CalculusId c, const ProofNode& proof);

// An occurrence of a substructure in a sequent: which side of the turnstile
// and the path inside that side.
struct Occurrence {
  bool on_lhs;
  Path path;
};

struct NotDisplayable : std::runtime_error {
  Occurrence occ;
  NotDisplayable(Occurrence o, const std::string& msg)
      : std::runtime_error(msg), occ(std::move(o)) {}
};

// One display step: `rule` is a one-premise catalog rule (display or
// exchange) with conclusion `conclusion`; its premise is the next sequent in
// the chain (or the displayed sequent for the last step).
struct DisplayStep {
  std::string rule;
  Sequent conclusion;
};

struct DisplayResult {
  Sequent displayed;  // the occurrence is the whole lhs (on_lhs) or rhs
  bool on_lhs;
  std::vector<DisplayStep> steps;  // from the original sequent towards `displayed`
};

// Displays the given occurrence. Throws NotDisplayable for occurrences inside
// formulas and for polarity-inconsistent positions (e.g. inside ■̌_I on the
// antecedent side).
DisplayResult display_occurrence(const Sequent& s, const Occurrence& occ);

// Wraps a proof of `res.displayed` into a proof of the original sequent by
// replaying the display chain downwards.
ProofNode wrap_display(const DisplayResult& res, ProofNode proof_of_displayed);

// Same chain but with the displayed occurrence replaced by `repl` throughout
// (the occurrence subtree is untouched by the chain, so replacing it yields
// another valid chain). Wraps a proof of `displayed[occ := repl]` into a
// proof of `original[occ := repl]`. Used by cut elimination.
ProofNode wrap_display_replaced(const Sequent& original, const Occurrence& occ,
                                const TermPtr& repl, ProofNode inner);

// Inverse use of the chain: from a proof of the original sequent, produce a
// proof of `res.displayed` (display rules are double-line, exchange is
// self-inverse, so each step can be replayed upwards).
ProofNode unwrap_display(const DisplayResult& res, ProofNode proof_of_original);

}  // namespace rp

// Bounded backward proof search.
//
// prove() runs iterative-deepening depth-first search from a goal sequent.
// Moves are catalog rules read backward (conclusion to premises), with a few
// refinements that keep the space manageable and reconstruction exact:
//
//   * the additive two-premise rules (and_R, or_L, cap_R, cup_L, sqcap_R,
//     sqcup_L) get fused variants that share the context between both
//     premises and discharge the duplication with the matching contraction;
//   * display rules are applied through display_occurrence: one move per
//     displayable occurrence, emitting the whole display chain at once;
//   * exchange, associativity, standalone contraction and the counit rules
//     are never applied alone — visited keys are computed modulo
//     associativity/commutativity of the structural clusters, which turns
//     exchange/associativity into no-ops and the rest into pure expansions;
//   * four macro moves bridge the kernel-embedding distribution laws
//     (embedding of a join below a join of embeddings, and dually for
//     meets). Those laws have no schematic structural derivation — there are
//     no identity axioms on structures — so each macro emits one analytic
//     cut whose cut formula is assembled from subterms of the goal, plus a
//     pre-built, fully primitive derivation of the cut's right premise.
//     Everything else the search emits is cut-free.
//
// Every move reconstructs catalog steps only, so returned proofs always pass
// check_proof. Failure is memoized per normalized goal and remaining depth;
// memo entries tainted by ancestor-cycle pruning are not recorded.

#pragma once

#include <optional>

#include "roughproof/parser.hpp"
#include "roughproof/rules.hpp"

namespace rp {

struct SearchBudget {
  int max_depth = 40;           // iterative-deepening limit (moves on a branch)
  long long max_nodes = 100000; // total goal expansions across all iterations
};

// Proved: a proof was found (and is returned).
// Exhausted: every branch was explored to the depth/size bounds without a
//            proof and without running out of nodes.
// NodeBudget: the node budget ran out first; nothing can be concluded.
enum class SearchStatus { Proved, Exhausted, NodeBudget };

std::string search_status_name(SearchStatus s);

struct SearchStats {
  long long nodes = 0;
  long long memo_hits = 0;
  int depth_reached = 0;  // deepest completed (or attempted) iteration
};

struct SearchResult {
  SearchStatus status;
  std::optional<ProofNode> proof;  // set iff status == Proved
  SearchStats stats;
};

SearchResult prove(CalculusId c, const Sequent& goal, const SearchBudget& budget = {});

// Identity expansion: a proof of  f ⊢ f  from atomic identities, one
// left/right introduction pair per connective. Throws std::logic_error if
// `f` is not a formula.
ProofNode derive_identity(CalculusId c, const TermPtr& f);

// True unless the formula (or a sequent side) uses the kernel negations,
// which only exist from D.TQBA5 upward.
bool formula_in_calculus(CalculusId c, const TermPtr& f);

// Operational image of a structural term: each structural connective is
// replaced by its operational counterpart. nullopt when the term contains a
// residual connective (→̌, >̂, ⊃̂, ⊃̌, ⊐̂, ⊐̌), which has no counterpart.
std::optional<TermPtr> structure_formula(const TermPtr& t);

// Derivations connecting a structural term s with its operational image f:
// a proof of  s ⊢ f  (collapse) and of  f ⊢ s  (expansion). Each direction
// exists only for polarity-appropriate shapes (e.g. ∨̌ expands on the right
// but does not collapse on the left); nullopt otherwise.
std::optional<ProofNode> prove_structure_to_formula(CalculusId c, const TermPtr& s);
std::optional<ProofNode> prove_formula_to_structure(CalculusId c, const TermPtr& s);

}  // namespace rp

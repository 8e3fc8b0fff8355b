// Rule catalog of the multi-type display calculi.
//
// Six calculi, by inclusion:
//   D.TQBA  ⊆  D.TQBA5  ⊆  D.IA1, D.IA2, D.IA3  ⊆  D.PRA
//
// Each catalog entry is a schematic inference: premise sequents and a
// conclusion sequent over sorted metavariables, tagged with the calculi it
// belongs to, a kind, and whether it is double-line (bidirectional).
// Several entries may share one display name (e.g. the two residuation forms
// of res_D); consumers try every entry with the requested name.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "roughproof/term.hpp"

namespace rp {

enum class CalculusId : uint8_t { TQBA, TQBA5, IA1, IA2, IA3, PRA };

constexpr int kCalculusCount = 6;

// Parses "D.TQBA", "D.IA1", ... (exact match).
std::optional<CalculusId> calculus_of_name(const std::string& name);
std::string calculus_name(CalculusId c);

enum class RuleKind : uint8_t { Identity, Cut, Display, Structural, Operational };

std::string rule_kind_name(RuleKind k);

struct Rule {
  std::string name;
  RuleKind kind;
  bool bidirectional;
  uint8_t calculi;  // bitmask indexed by CalculusId
  std::vector<Sequent> premises;  // schemas
  Sequent conclusion;             // schema

  bool in_calculus(CalculusId c) const { return (calculi >> static_cast<int>(c)) & 1; }
};

// The full catalog in a fixed, stable order.
const std::vector<Rule>& rule_catalog();

// Entries belonging to a calculus, in catalog order.
std::vector<const Rule*> rule_set(CalculusId c);

// Resolves a display name (or alias) to all entries with that name in the
// calculus. Aliases: "pra" -> "ia3", "boxI-vee" -> "boxI-cup".
std::vector<const Rule*> rules_by_name(CalculusId c, const std::string& name);
// True if the name (or alias) exists in the catalog at all (any calculus).
bool rule_name_exists(const std::string& name);
// Canonical form of a possibly-aliased rule name.
std::string canonical_rule_name(const std::string& name);

// All substitutions matching the rule's conclusion schema against a concrete
// sequent (at most one for these rigid schemas; returned as a list for
// interface stability). For bidirectional rules this matches the conclusion
// side only; callers wanting the reverse orientation match `premises[0]`.
std::vector<Subst> match_schema(const Rule& r, const Sequent& concrete);

// Plain-text export of a calculus' rule table (stable across runs; intended
// for documentation and diffing).
std::string export_rules(CalculusId c);

}  // namespace rp

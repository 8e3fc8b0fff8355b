// Core term language for the multi-type display calculi D.TQBA .. D.PRA.
//
// A single Term type covers both layers of the object language:
//   * operational terms (formulas) — the logical connectives of the three
//     types D (the base De Morgan type), KI (the interior kernel type) and
//     KC (the closure kernel type);
//   * structural terms — the structural proxies that appear in sequents,
//     whose leaves are formulas.
// Rule schemas additionally use sorted metavariables (MetaVar nodes); concrete
// formulas/structures never contain them.
//
// Terms are immutable and hash-consed-by-value (each node carries a
// structural hash computed at construction). All well-formedness is
// signature-driven: every constructor has a fixed result sort and child
// sorts, and operational constructors only accept operational children.

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rp {

// The three types of the multi-type language.
enum class Sort : uint8_t { D, KI, KC };

std::string sort_name(Sort s);

// Sorts a schema metavariable can carry. Struct* metavariables match any
// structure (including a bare formula used as a structure leaf) of the type;
// Form* metavariables match only formulas; AtomD matches only atoms.
enum class MetaSort : uint8_t {
  StructD,
  StructKI,
  StructKC,
  FormD,
  FormKI,
  FormKC,
  AtomD,
};

Sort metasort_type(MetaSort m);
bool metasort_is_structural(MetaSort m);

// Term constructors. Order is load-bearing: it is the primary key of the
// total term order used by normalize(), so it must stay stable.
enum class Op : uint8_t {
  // --- operational, type D ---
  Atom,   // propositional atom (named)
  Top,    // ⊤
  Bot,    // ⊥
  Neg,    // ¬
  And,    // ∧
  Or,     // ∨
  CircI,  // ∘_I : KI -> D
  CircC,  // ∘_C : KC -> D
  // --- operational, type KI ---
  BoxI,    // ■_I : D -> KI
  DiamI,   // ♦_I : D -> KI
  OneI,    // 1_I
  ZeroI,   // 0_I
  Cap,     // ∩
  Cup,     // ∪
  SimK,    // ∼ : KI -> KI
  // --- operational, type KC ---
  DiamC,   // ♦_C : D -> KC
  BoxC,    // ■_C : D -> KC
  OneC,    // 1_C
  ZeroC,   // 0_C
  Sqcap,   // ⊓
  Sqcup,   // ⊔
  MinusK,  // − : KC -> KC
  // --- structural, type D ---
  HatTop,      // ⊤̂
  CheckBot,    // ⊥̌
  HatAnd,      // ∧̂
  CheckOr,     // ∨̌
  TildeNeg,    // ¬̃
  HatExcl,     // >̂   (left residual of ∨̌)
  CheckArrow,  // →̌   (right residual of ∧̂)
  TildeCircI,  // ∘̃_I : KI -> D
  TildeCircC,  // ∘̃_C : KC -> D
  // --- structural, type KI ---
  CheckBoxI,     // ■̌_I : D -> KI
  HatDiamI,      // ♦̂_I : D -> KI
  HatOneI,       // 1̂_I
  CheckZeroI,    // 0̌_I
  HatCap,        // ∩̂
  CheckCup,      // ∪̌
  HatSupRes,     // ⊃̂   (left residual of ∪̌)
  CheckSupRes,   // ⊃̌   (right residual of ∩̂)
  TildeSim,      // ∼̃
  // --- structural, type KC ---
  HatDiamC,       // ♦̂_C : D -> KC
  CheckBoxC,      // ■̌_C : D -> KC
  HatOneC,        // 1̂_C
  CheckZeroC,     // 0̌_C
  HatSqcap,       // ⊓̂
  CheckSqcup,     // ⊔̌
  HatSqsupRes,    // ⊐̂   (left residual of ⊔̌)
  CheckSqsupRes,  // ⊐̌   (right residual of ⊓̂)
  TildeMinus,     // −̃
  // --- schema ---
  MetaVar,
};

constexpr int kOpCount = static_cast<int>(Op::MetaVar) + 1;

struct Term;
using TermPtr = std::shared_ptr<const Term>;

struct Term {
  Op op;
  std::string name;           // Atom and MetaVar only
  MetaSort msort;             // MetaVar only
  std::vector<TermPtr> kids;
  uint64_t hash;

  Term(Op o, std::string n, MetaSort m, std::vector<TermPtr> k);
};

// --- signatures ---

// Number of children the constructor takes (atoms and metavars: 0).
int op_arity(Op op);
// Result sort of the constructor; for MetaVar taken from the node.
Sort op_result_sort(Op op);
// Sort required of child `i`.
Sort op_child_sort(Op op, int i);
// True for operational constructors (formula layer), including Atom.
bool op_is_operational(Op op);
// True for structural constructors.
bool op_is_structural(Op op);
// Monotone (+1) or antitone (-1) dependency of the term on child `i`.
int op_slot_polarity(Op op, int i);
// Concrete-syntax token of the constructor (atoms/metavars print their name).
const char* op_token(Op op);
// Inverse of op_token; returns nullopt for unknown tokens.
std::optional<Op> op_of_token(const std::string& tok);

// --- construction ---

// Builds a node, asserting child sorts and the operational/structural
// discipline (throws std::logic_error on violation; parser-facing validation
// with positions lives in the parser).
TermPtr mk(Op op, std::vector<TermPtr> kids = {});
TermPtr mk_atom(const std::string& name);
TermPtr mk_metavar(const std::string& name, MetaSort ms);

// Metavariable name -> schema sort, per the fixed naming convention
// (X,Y,Z,W,U,V: D structures; GAMMA,DELTA,LAMBDA,THETA: KI structures;
//  PI,SIGMA,OMEGA,RHO: KC structures; A,B: D formulas; ALPHA,BETA: KI
//  formulas; XI,CHI: KC formulas; P,Q: atoms).
std::optional<MetaSort> metasort_of_name(const std::string& name);

// --- queries ---

Sort sort_of(const TermPtr& t);
// True iff every node of the term is operational (no metavars).
bool is_formula(const TermPtr& t);
// True iff the term contains a MetaVar node.
bool has_metavars(const TermPtr& t);
// Node count.
int term_size(const TermPtr& t);

bool term_eq(const TermPtr& a, const TermPtr& b);
// Total order: constructor tag, then name, then children lexicographically.
int term_cmp(const TermPtr& a, const TermPtr& b);

struct TermPtrHash {
  size_t operator()(const TermPtr& t) const { return static_cast<size_t>(t->hash); }
};
struct TermPtrEq {
  bool operator()(const TermPtr& a, const TermPtr& b) const { return term_eq(a, b); }
};

// --- paths and occurrences ---

using Path = std::vector<int>;

// Subterm at path; throws std::out_of_range for invalid paths.
TermPtr subterm_at(const TermPtr& t, const Path& p);
// Replaces the subterm at path (rebuilding the spine).
TermPtr replace_at(const TermPtr& t, const Path& p, const TermPtr& repl);
// Product of slot polarities along the path (+1 or -1).
int path_polarity(const TermPtr& t, const Path& p);

// --- normalization ---

// Canonical form used for proof-search visited keys and for comparing
// sequents modulo bookkeeping: flattens nested clusters of each
// associative-commutative structural constructor (∧̂, ∨̌, ∩̂, ∪̌, ⊓̂, ⊔̌) and
// sorts the atoms of each cluster by the total term order. When `full` is
// set it additionally drops duplicate siblings and unit elements inside each
// cluster (an emptied cluster collapses to its unit). Idempotent in both
// modes; formulas are left untouched.
TermPtr normalize(const TermPtr& t, bool full = true);

// --- sequents ---

struct Sequent {
  TermPtr lhs;
  TermPtr rhs;

  bool operator==(const Sequent& o) const {
    return term_eq(lhs, o.lhs) && term_eq(rhs, o.rhs);
  }
};

// Common sort of both sides; throws std::logic_error if the sides disagree.
Sort sequent_sort(const Sequent& s);
Sequent normalize(const Sequent& s, bool full = true);
uint64_t sequent_hash(const Sequent& s);

struct SequentHash {
  size_t operator()(const Sequent& s) const { return static_cast<size_t>(sequent_hash(s)); }
};

// --- substitutions and schema matching ---

// Metavariable name -> term. Instantiation respects sorts by construction.
using Subst = std::vector<std::pair<std::string, TermPtr>>;

const TermPtr* subst_find(const Subst& s, const std::string& name);

// Matches a schema (term with metavariables) against a concrete term.
// Nonlinear patterns require structural equality of repeats. Returns false
// and leaves `out` unspecified on mismatch.
bool match_term(const TermPtr& schema, const TermPtr& concrete, Subst& out);
bool match_sequent(const Sequent& schema, const Sequent& concrete, Subst& out);

// Replaces metavariables by their bindings (all metavariables must be bound).
TermPtr apply_subst(const TermPtr& schema, const Subst& s);
Sequent apply_subst(const Sequent& schema, const Subst& s);

// --- rendering (canonical s-expression concrete syntax) ---

std::string render(const TermPtr& t);
std::string render(const Sequent& s);

}  // namespace rp

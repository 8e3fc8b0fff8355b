// Finite algebraic semantics.
//
// Single-type side: finite distributive lattices with an order-reversing
// involution (De Morgan negation) and an interior operation I satisfying
//   I(a∧b) = Ia∧Ib,  IIa = Ia,  Ia ≤ a,  I⊤ = ⊤,
// with the closure C a := ¬I¬a. Subclasses are cut out by
//   T5: CIa = Ia          T6: Ia ∨ ¬Ia = ⊤
//   T7: I(a∨b) = Ia∨Ib    T8: Ia ≤ Ib and Ca ≤ Cb imply a ≤ b
// (tqBa5 = T5; IA1 = T5+T6; IA2 = T5+T7; IA3 = T5+T8; pra = T5–T8).
//
// Heterogeneous side: a base De Morgan algebra D, two bounded distributive
// lattices L_I, L_C, bounded lattice embeddings e_I, e_C into D, and maps
// ι ⊣ e_I (right adjoint presentation: e_I(α) ≤ a iff α ≤ ι(a)) and
// γ ⊣ e_C (γ(a) ≤ ξ iff a ≤ e_C(ξ)), with ι∘e_I = id, γ∘e_C = id and the
// interaction law e_C(γ(a)) = ¬ e_I(ι(¬a)). Structural and operational
// connectives of the three types are interpreted over such algebras; the
// leftover structural proxies take the derived adjoints (least open above /
// greatest closed below).
//
// Everything here is exhaustive and exact: small carriers, total tables.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "roughproof/rules.hpp"
#include "roughproof/term.hpp"

namespace rp {

struct Lattice {
  int n = 0;
  std::vector<uint8_t> leq;            // n*n, row-major: leq[i*n+j] = (i ≤ j)
  std::vector<uint8_t> meet, join;     // n*n element ids
  int bot = 0, top = 0;

  bool le(int a, int b) const { return leq[static_cast<size_t>(a) * n + b] != 0; }
  int mt(int a, int b) const { return meet[static_cast<size_t>(a) * n + b]; }
  int jn(int a, int b) const { return join[static_cast<size_t>(a) * n + b]; }

  // Builds meet/join/bounds from a candidate order; returns nullopt unless
  // the order is a bounded lattice in which every pair has meet and join.
  static std::optional<Lattice> from_leq(int n, std::vector<uint8_t> leq);
  bool distributive() const;
};

struct SingleAlgebra {
  Lattice lat;
  std::vector<uint8_t> neg;   // involution
  std::vector<uint8_t> intr;  // interior operation

  int clos(int a) const { return neg[intr[neg[a]]]; }
};

enum class AlgClass : uint8_t { tqBa = 0, tqBa5, IA1, IA2, IA3, pra };
constexpr int kAlgClassCount = 6;

std::string alg_class_name(AlgClass c);
// Accepts lowercase names with optional leading 'h' ("tqba5", "hia2", ...).
std::optional<AlgClass> alg_class_of_name(const std::string& name);

// Checks the base axioms (bounded distributive lattice, De Morgan involution,
// interior axioms). nullopt = valid; otherwise a description of the defect.
std::optional<std::string> validate_single(const SingleAlgebra& a);

// Bitmask over AlgClass of all classes the (valid) algebra belongs to.
uint8_t classify(const SingleAlgebra& a);
inline bool has_class(uint8_t mask, AlgClass c) {
  return (mask >> static_cast<int>(c)) & 1;
}

// Sorted fixpoints of I (the open elements) and of C (the closed elements).
std::vector<int> open_elements(const SingleAlgebra& a);
std::vector<int> closed_elements(const SingleAlgebra& a);

struct HetAlgebra {
  Lattice D;
  std::vector<uint8_t> negD;
  Lattice LI, LC;
  std::vector<uint8_t> eI, eC;        // LI -> D, LC -> D
  std::vector<uint8_t> iota, gamma;   // D -> LI, D -> LC
  std::vector<uint8_t> iotaAdj;       // D -> LI: least α with a ≤ eI(α)
  std::vector<uint8_t> gammaAdj;      // D -> LC: greatest ξ with eC(ξ) ≤ a
  bool has_kernel_neg = false;        // tqBa5 family: kernel negations below
  std::vector<uint8_t> simI;          // LI -> LI
  std::vector<uint8_t> minusC;        // LC -> LC
};

// Checks the heterogeneous axioms (and, when kernel negations are present,
// that they are De Morgan negations compatible with the embeddings).
std::optional<std::string> validate_het(const HetAlgebra& h);
// Bitmask over AlgClass for the heterogeneous subclasses.
uint8_t classify_het(const HetAlgebra& h);

// Kernel construction and its inverse.
HetAlgebra to_heterogeneous(const SingleAlgebra& a);
SingleAlgebra to_single(const HetAlgebra& h);

bool is_isomorphic(const SingleAlgebra& a, const SingleAlgebra& b);
bool is_isomorphic_het(const HetAlgebra& a, const HetAlgebra& b);

// --- evaluation ---

// Atom/metavariable environments: name -> element id (atoms live in D;
// metavariables in the carrier of their sort).
using Env = std::vector<std::pair<std::string, int>>;

// Evaluates a formula or structure (possibly containing metavariables bound
// in `metas`) to an element of its sort's carrier.
int eval_term(const HetAlgebra& h, const TermPtr& t, const Env& atoms,
              const Env& metas = {});

// lhs ≤ rhs in the sort's carrier under the given environments.
bool seq_holds_under(const HetAlgebra& h, const Sequent& s, const Env& atoms,
                     const Env& metas = {});

// Valid = holds under every assignment of the atoms occurring in s.
bool seq_valid(const HetAlgebra& h, const Sequent& s);
// First falsifying atom assignment in lexicographic order, if any.
std::optional<Env> find_falsifying(const HetAlgebra& h, const Sequent& s);

// True if the rule's schemas only use operations the algebra carries
// (kernel negation rules need the tqBa5 family).
bool rule_applicable(const Rule& r, const HetAlgebra& h);

// Exhaustively instantiates the rule's metavariables over the carriers; if
// all premises hold but the conclusion fails (or, for double-line rules, the
// converse direction fails) returns a description of the counterexample.
std::optional<std::string> check_rule_soundness(const Rule& r, const HetAlgebra& h);

struct SweepResult {
  int rules_checked = 0;   // rules in the calculus
  int algebras = 0;        // heterogeneous models swept
  long long checks = 0;    // applicable (rule, algebra) pairs verified
  std::vector<std::string> violations;
};

// Checks every rule of the calculus against every heterogeneous algebra
// derived from the enumeration of the calculus's algebra class.
SweepResult soundness_sweep(CalculusId calc, int max_size, int jobs = 0);

// --- enumeration ---

struct EnumOptions {
  int max_size = 5;           // carrier bound (≥ 2; the one-element algebra is excluded)
  AlgClass cls = AlgClass::tqBa;
  int jobs = 0;               // 0 = library default; 1 forces the serial path
};

// All algebras of the class with carrier ≤ max_size, one per isomorphism
// class, in a deterministic order. The serial (jobs=1) and parallel paths
// return identical lists.
std::vector<SingleAlgebra> enumerate_algebras(const EnumOptions& opt);

// Same, consulting the directory named by ROUGHPROOF_CACHE (if set) for a
// precomputed result keyed by class and size.
std::vector<SingleAlgebra> enumerate_algebras_cached(const EnumOptions& opt);

struct Countermodel {
  SingleAlgebra algebra;       // the heterogeneous algebra is derived from it
  Env atoms;
};

// First enumerated algebra of the class (carrier ≤ max_size) whose derived
// heterogeneous algebra falsifies the sequent, with the falsifying
// assignment.
std::optional<Countermodel> countermodel(const Sequent& s, AlgClass cls, int max_size,
                                         int jobs = 0);

// --- serialization (.alg) ---

std::string render_alg(const SingleAlgebra& a);
SingleAlgebra parse_alg(const std::string& text);  // throws std::runtime_error

// Isomorphism-invariant canonical encoding (minimum over relabelings).
std::string canonical_key(const SingleAlgebra& a);

}  // namespace rp

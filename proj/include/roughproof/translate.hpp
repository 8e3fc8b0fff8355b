// The single-type language of rough approximation (lower and upper
// approximation operators I and C over a De Morgan propositional base) and
// its translation into the multi-type language: I becomes ∘_I ■_I and C
// becomes ∘_C ♦_C, all other connectives map homomorphically. The
// translation is injective and preserves evaluation: a single-type formula
// and its image take the same value in any algebra and its derived
// two-kernel presentation.

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "roughproof/algebra.hpp"
#include "roughproof/rules.hpp"
#include "roughproof/term.hpp"

namespace rp {

enum class LOp : uint8_t { Atom, Top, Bot, Neg, I, C, And, Or };

struct LTerm;
using LTermPtr = std::shared_ptr<const LTerm>;

struct LTerm {
  LOp op;
  std::string name;  // atoms only
  std::vector<LTermPtr> kids;
};

LTermPtr lmk(LOp op, std::vector<LTermPtr> kids = {});
LTermPtr latom(const std::string& name);

// Syntax: an atom, "top", "bot", or "(neg t)", "(I t)", "(C t)",
// "(and t t)", "(or t t)". Throws SyntaxError on malformed input.
LTermPtr parse_lterm(const std::string& text);
std::string render_lterm(const LTermPtr& t);

bool lterm_eq(const LTermPtr& a, const LTermPtr& b);

// The translation into the multi-type language (a formula of the base type).
TermPtr t_translate(const LTermPtr& t);

// Direct single-type evaluation (I is the interior, C the closure).
int eval_lterm(const SingleAlgebra& a, const LTermPtr& t, const Env& atoms);

// The bridge theorems of the toolkit, as proof-search regression targets:
// characteristic single-type sequents, each paired with the weakest calculus
// whose proof system should derive its translation.
struct RegressionTarget {
  std::string name;
  CalculusId calculus;
  LTermPtr lhs, rhs;
  Sequent sequent;  // t(lhs) ⊢ t(rhs)
};

const std::vector<RegressionTarget>& regression_targets();

}  // namespace rp

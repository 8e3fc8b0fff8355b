// Concrete s-expression syntax for terms, sequents and proof trees.
//
//   term     :=  SYMBOL | '(' SYMBOL term* ')'
//   sequent  :=  '(' 'seq' term term ')'
//   proof    :=  '(' 'rule' NAME sequent proof* ')'
//
// Constructor symbols are the fixed token set from term.hpp (`and`, `s-wedge`,
// `circI`, ...). Lowercase identifiers that are not constructor tokens are
// atoms; uppercase identifiers are schema metavariables (only accepted when
// parsing schemas). `;` starts a comment running to end of line.
//
// All parse errors carry source positions; sort errors additionally carry the
// path (child-index list) from the root of the offending term.

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "roughproof/term.hpp"

namespace rp {

struct SyntaxError : std::runtime_error {
  int line, col;
  SyntaxError(int l, int c, const std::string& msg)
      : std::runtime_error("syntax error at " + std::to_string(l) + ":" +
                           std::to_string(c) + ": " + msg),
        line(l), col(c) {}
};

struct AritySmash : std::runtime_error {
  std::string token;
  int expected, got;
  int line, col;
  AritySmash(std::string tok, int exp, int g, int l, int c)
      : std::runtime_error("arity error at " + std::to_string(l) + ":" +
                           std::to_string(c) + ": '" + tok + "' takes " +
                           std::to_string(exp) + " argument(s), got " +
                           std::to_string(g)),
        token(std::move(tok)), expected(exp), got(g), line(l), col(c) {}
};

struct IllSorted : std::runtime_error {
  Path path;
  int line, col;
  IllSorted(Path p, int l, int c, const std::string& msg)
      : std::runtime_error("sort error at " + std::to_string(l) + ":" +
                           std::to_string(c) + ": " + msg),
        path(std::move(p)), line(l), col(c) {}
};

struct UnknownRule : std::runtime_error {
  std::string rule;
  explicit UnknownRule(const std::string& r, const std::string& where = "")
      : std::runtime_error("unknown rule '" + r + "'" + (where.empty() ? "" : " " + where)),
        rule(r) {}
};

// An unchecked proof tree as parsed: rule names are arbitrary symbols here
// and are resolved against a calculus by check_proof.
struct ProofNode {
  std::string rule;
  Sequent concl;
  std::vector<ProofNode> kids;
};

struct ParseOptions {
  std::optional<Sort> expect;      // required sort of the parsed term/sequent
  bool allow_metavars = false;     // accept schema metavariables
};

TermPtr parse_term(const std::string& text, const ParseOptions& opt = {});
Sequent parse_sequent(const std::string& text, const ParseOptions& opt = {});
ProofNode parse_proof(const std::string& text);

// Renders a proof tree; children are indented two spaces per level.
// parse_proof(render_proof(p)) reproduces p exactly.
std::string render_proof(const ProofNode& p);

}  // namespace rp

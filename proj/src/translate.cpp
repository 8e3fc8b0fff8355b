#include "roughproof/translate.hpp"

#include <cctype>
#include <stdexcept>

#include "roughproof/parser.hpp"

namespace rp {
namespace {

int l_arity(LOp op) {
  switch (op) {
    case LOp::Atom:
    case LOp::Top:
    case LOp::Bot: return 0;
    case LOp::Neg:
    case LOp::I:
    case LOp::C: return 1;
    default: return 2;
  }
}

struct LLexer {
  const std::string& src;
  size_t pos = 0;
  int line = 1, col = 1;

  explicit LLexer(const std::string& s) : src(s) {}

  void advance() {
    if (pos < src.size() && src[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }
  void skip_ws() {
    while (pos < src.size()) {
      if (std::isspace(static_cast<unsigned char>(src[pos]))) {
        advance();
      } else if (src[pos] == ';') {
        while (pos < src.size() && src[pos] != '\n') advance();
      } else {
        break;
      }
    }
  }
  bool at_end() {
    skip_ws();
    return pos >= src.size();
  }
  char peek() {
    skip_ws();
    return pos < src.size() ? src[pos] : '\0';
  }
  std::string symbol() {
    skip_ws();
    if (pos >= src.size()) throw SyntaxError(line, col, "unexpected end of input");
    const int l = line, c = col;
    std::string out;
    while (pos < src.size() && !std::isspace(static_cast<unsigned char>(src[pos])) &&
           src[pos] != '(' && src[pos] != ')' && src[pos] != ';')
      out.push_back(src[pos]), advance();
    if (out.empty()) throw SyntaxError(l, c, "expected a symbol");
    return out;
  }
};

bool atom_shaped(const std::string& s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
  for (char ch : s)
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_' && ch != '\'') return false;
  return true;
}

LTermPtr parse_rec(LLexer& lx) {
  lx.skip_ws();
  const int line = lx.line, col = lx.col;
  if (lx.peek() == '(') {
    lx.advance();
    const std::string head = lx.symbol();
    LOp op;
    if (head == "neg") op = LOp::Neg;
    else if (head == "I") op = LOp::I;
    else if (head == "C") op = LOp::C;
    else if (head == "and") op = LOp::And;
    else if (head == "or") op = LOp::Or;
    else throw SyntaxError(line, col, "unknown connective '" + head + "'");
    std::vector<LTermPtr> kids;
    while (lx.peek() != ')') {
      if (lx.at_end()) throw SyntaxError(lx.line, lx.col, "missing ')'");
      kids.push_back(parse_rec(lx));
    }
    lx.advance();  // consume ')'
    if (static_cast<int>(kids.size()) != l_arity(op))
      throw AritySmash(head, l_arity(op), static_cast<int>(kids.size()), line, col);
    return lmk(op, std::move(kids));
  }
  const std::string sym = lx.symbol();
  if (sym == "top") return lmk(LOp::Top);
  if (sym == "bot") return lmk(LOp::Bot);
  if (sym == ")") throw SyntaxError(line, col, "unexpected ')'");
  if (!atom_shaped(sym)) throw SyntaxError(line, col, "'" + sym + "' is not an atom");
  return latom(sym);
}

}  // namespace

LTermPtr lmk(LOp op, std::vector<LTermPtr> kids) {
  if (static_cast<int>(kids.size()) != l_arity(op))
    throw std::invalid_argument("wrong number of arguments for connective");
  auto t = std::make_shared<LTerm>();
  t->op = op;
  t->kids = std::move(kids);
  return t;
}

LTermPtr latom(const std::string& name) {
  auto t = std::make_shared<LTerm>();
  t->op = LOp::Atom;
  t->name = name;
  return t;
}

LTermPtr parse_lterm(const std::string& text) {
  LLexer lx(text);
  LTermPtr t = parse_rec(lx);
  if (!lx.at_end()) throw SyntaxError(lx.line, lx.col, "trailing input after term");
  return t;
}

std::string render_lterm(const LTermPtr& t) {
  switch (t->op) {
    case LOp::Atom: return t->name;
    case LOp::Top: return "top";
    case LOp::Bot: return "bot";
    case LOp::Neg: return "(neg " + render_lterm(t->kids[0]) + ")";
    case LOp::I: return "(I " + render_lterm(t->kids[0]) + ")";
    case LOp::C: return "(C " + render_lterm(t->kids[0]) + ")";
    case LOp::And: return "(and " + render_lterm(t->kids[0]) + " " + render_lterm(t->kids[1]) + ")";
    default: return "(or " + render_lterm(t->kids[0]) + " " + render_lterm(t->kids[1]) + ")";
  }
}

bool lterm_eq(const LTermPtr& a, const LTermPtr& b) {
  if (a->op != b->op || a->name != b->name || a->kids.size() != b->kids.size()) return false;
  for (size_t i = 0; i < a->kids.size(); ++i)
    if (!lterm_eq(a->kids[i], b->kids[i])) return false;
  return true;
}

TermPtr t_translate(const LTermPtr& t) {
  switch (t->op) {
    case LOp::Atom: return mk_atom(t->name);
    case LOp::Top: return mk(Op::Top, {});
    case LOp::Bot: return mk(Op::Bot, {});
    case LOp::Neg: return mk(Op::Neg, {t_translate(t->kids[0])});
    case LOp::And: return mk(Op::And, {t_translate(t->kids[0]), t_translate(t->kids[1])});
    case LOp::Or: return mk(Op::Or, {t_translate(t->kids[0]), t_translate(t->kids[1])});
    case LOp::I: return mk(Op::CircI, {mk(Op::BoxI, {t_translate(t->kids[0])})});
    default: return mk(Op::CircC, {mk(Op::DiamC, {t_translate(t->kids[0])})});
  }
}

int eval_lterm(const SingleAlgebra& a, const LTermPtr& t, const Env& atoms) {
  switch (t->op) {
    case LOp::Atom:
      for (const auto& [k, v] : atoms)
        if (k == t->name) return v;
      throw std::runtime_error("unbound atom in evaluation: " + t->name);
    case LOp::Top: return a.lat.top;
    case LOp::Bot: return a.lat.bot;
    case LOp::Neg: return a.neg[eval_lterm(a, t->kids[0], atoms)];
    case LOp::I: return a.intr[eval_lterm(a, t->kids[0], atoms)];
    case LOp::C: return a.clos(eval_lterm(a, t->kids[0], atoms));
    case LOp::And: return a.lat.mt(eval_lterm(a, t->kids[0], atoms), eval_lterm(a, t->kids[1], atoms));
    default: return a.lat.jn(eval_lterm(a, t->kids[0], atoms), eval_lterm(a, t->kids[1], atoms));
  }
}

const std::vector<RegressionTarget>& regression_targets() {
  static const std::vector<RegressionTarget> targets = [] {
    auto make = [](const std::string& name, CalculusId calc, const std::string& lhs,
                   const std::string& rhs) {
      RegressionTarget t;
      t.name = name;
      t.calculus = calc;
      t.lhs = parse_lterm(lhs);
      t.rhs = parse_lterm(rhs);
      t.sequent = Sequent{t_translate(t.lhs), t_translate(t.rhs)};
      return t;
    };
    std::vector<RegressionTarget> v;
    v.push_back(make("interior-below", CalculusId::TQBA, "(I p)", "p"));
    v.push_back(make("interior-top", CalculusId::TQBA, "top", "(I top)"));
    v.push_back(make("interior-meet-out", CalculusId::TQBA, "(I (and p q))", "(and (I p) (I q))"));
    v.push_back(make("interior-meet-in", CalculusId::TQBA, "(and (I p) (I q))", "(I (and p q))"));
    v.push_back(make("interior-idempotent", CalculusId::TQBA, "(I p)", "(I (I p))"));
    v.push_back(make("interior-stable", CalculusId::TQBA5, "(C (I p))", "(I p)"));
    v.push_back(make("interior-join-out", CalculusId::IA2, "(I (or p q))", "(or (I p) (I q))"));
    v.push_back(make("interior-join-in", CalculusId::IA2, "(or (I p) (I q))", "(I (or p q))"));
    v.push_back(make("interior-complement", CalculusId::IA1, "top", "(or (I p) (neg (I p)))"));
    v.push_back(make("joint-reflection", CalculusId::IA3, "(and p (C q))", "(or (I p) q)"));
    return v;
  }();
  return targets;
}

}  // namespace rp

#include "roughproof/parser.hpp"

#include <cctype>

namespace rp {

namespace {

struct Token {
  enum Kind { LParen, RParen, Symbol, End } kind;
  std::string text;
  int line, col;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  Token next() {
    skip_ws();
    if (pos_ >= text_.size()) return {Token::End, "", line_, col_};
    int l = line_, c = col_;
    char ch = text_[pos_];
    if (ch == '(') { advance(); return {Token::LParen, "(", l, c}; }
    if (ch == ')') { advance(); return {Token::RParen, ")", l, c}; }
    std::string sym;
    while (pos_ < text_.size()) {
      char d = text_[pos_];
      if (d == '(' || d == ')' || d == ';' || std::isspace(static_cast<unsigned char>(d))) break;
      sym += d;
      advance();
    }
    return {Token::Symbol, sym, l, c};
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size()) {
      char ch = text_[pos_];
      if (ch == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        advance();
      } else {
        break;
      }
    }
  }

  void advance() {
    if (text_[pos_] == '\n') { ++line_; col_ = 1; } else { ++col_; }
    ++pos_;
  }

  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1, col_ = 1;
};

bool atom_shaped(const std::string& s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_' && c != '\'') return false;
  return true;
}

bool metavar_shaped(const std::string& s) {
  if (s.empty() || !std::isupper(static_cast<unsigned char>(s[0]))) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

class Parser {
 public:
  Parser(const std::string& text, const ParseOptions& opt) : lex_(text), opt_(opt) {
    cur_ = lex_.next();
  }

  TermPtr term_toplevel() {
    Path root;
    TermPtr t = term(root);
    expect_end();
    check_expected_sort(t);
    return t;
  }

  Sequent sequent_toplevel() {
    Sequent s = sequent();
    expect_end();
    if (opt_.expect && sequent_sort(s) != *opt_.expect)
      throw IllSorted({}, 1, 1,
                      "sequent has type " + sort_name(sequent_sort(s)) + ", expected " +
                          sort_name(*opt_.expect));
    return s;
  }

  ProofNode proof_toplevel() {
    ProofNode p = proof();
    expect_end();
    return p;
  }

 private:
  void bump() { cur_ = lex_.next(); }

  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(cur_.line, cur_.col, msg);
  }

  void expect_end() {
    if (cur_.kind != Token::End) fail("trailing input after complete form");
  }

  void check_expected_sort(const TermPtr& t) const {
    if (opt_.expect && sort_of(t) != *opt_.expect)
      throw IllSorted({}, 1, 1,
                      "term has type " + sort_name(sort_of(t)) + ", expected " +
                          sort_name(*opt_.expect));
  }

  TermPtr leaf_symbol(const Token& tok, const Path& at) {
    if (auto op = op_of_token(tok.text)) {
      if (op_arity(*op) != 0)
        throw AritySmash(tok.text, op_arity(*op), 0, tok.line, tok.col);
      return mk(*op);
    }
    if (atom_shaped(tok.text)) return mk_atom(tok.text);
    if (metavar_shaped(tok.text)) {
      if (!opt_.allow_metavars)
        throw SyntaxError(tok.line, tok.col,
                          "metavariable '" + tok.text + "' not allowed in concrete terms");
      auto ms = metasort_of_name(tok.text);
      if (!ms)
        throw SyntaxError(tok.line, tok.col, "unknown metavariable '" + tok.text + "'");
      return mk_metavar(tok.text, *ms);
    }
    (void)at;
    throw SyntaxError(tok.line, tok.col, "unknown symbol '" + tok.text + "'");
  }

  // Parses one term; `at` is the path from the root of the toplevel term,
  // used to report sort errors by position.
  TermPtr term(Path& at) {
    if (cur_.kind == Token::Symbol) {
      Token tok = cur_;
      bump();
      return leaf_symbol(tok, at);
    }
    if (cur_.kind != Token::LParen) fail("expected a term");
    bump();
    if (cur_.kind != Token::Symbol) fail("expected a constructor symbol after '('");
    Token head = cur_;
    bump();
    auto op = op_of_token(head.text);
    std::vector<TermPtr> kids;
    std::vector<Token> kid_toks;
    while (cur_.kind != Token::RParen) {
      if (cur_.kind == Token::End) fail("unexpected end of input inside term");
      Token kid_tok = cur_;
      at.push_back(static_cast<int>(kids.size()));
      kids.push_back(term(at));
      at.pop_back();
      kid_toks.push_back(kid_tok);
    }
    bump();  // ')'
    if (!op) {
      // `(p)` and `(X)` are arity errors on leaves; anything else is unknown.
      if (atom_shaped(head.text) || metavar_shaped(head.text)) {
        if (kids.empty()) return leaf_symbol(head, at);
        throw AritySmash(head.text, 0, static_cast<int>(kids.size()), head.line, head.col);
      }
      throw SyntaxError(head.line, head.col, "unknown constructor '" + head.text + "'");
    }
    if (static_cast<int>(kids.size()) != op_arity(*op))
      throw AritySmash(head.text, op_arity(*op), static_cast<int>(kids.size()), head.line,
                       head.col);
    // Sort-check children against the signature, pointing at the child token.
    for (size_t i = 0; i < kids.size(); ++i) {
      Sort want = op_child_sort(*op, static_cast<int>(i));
      if (sort_of(kids[i]) != want) {
        Path p = at;
        p.push_back(static_cast<int>(i));
        throw IllSorted(p, kid_toks[i].line, kid_toks[i].col,
                        "argument " + std::to_string(i) + " of '" + head.text + "' has type " +
                            sort_name(sort_of(kids[i])) + ", expected " + sort_name(want));
      }
      if (op_is_operational(*op) && !is_formula_or_formula_schema(kids[i])) {
        Path p = at;
        p.push_back(static_cast<int>(i));
        throw IllSorted(p, kid_toks[i].line, kid_toks[i].col,
                        "operational constructor '" + head.text +
                            "' applied to a structural term");
      }
    }
    return mk(*op, std::move(kids));
  }

  static bool is_formula_or_formula_schema(const TermPtr& t) {
    if (t->op == Op::MetaVar) return !metasort_is_structural(t->msort);
    if (!op_is_operational(t->op)) return false;
    for (const auto& k : t->kids)
      if (!is_formula_or_formula_schema(k)) return false;
    return true;
  }

  Sequent sequent() {
    if (cur_.kind != Token::LParen) fail("expected '(seq ...)'");
    Token open = cur_;
    bump();
    if (cur_.kind != Token::Symbol || cur_.text != "seq") fail("expected 'seq'");
    bump();
    Path at;
    TermPtr l = term(at);
    Token rtok = cur_;
    TermPtr r = term(at);
    if (cur_.kind != Token::RParen) {
      if (cur_.kind == Token::End) fail("unexpected end of input inside sequent");
      fail("sequent takes exactly two terms");
    }
    bump();
    if (sort_of(l) != sort_of(r))
      throw IllSorted({1}, rtok.line, rtok.col,
                      "sequent sides have different types (" + sort_name(sort_of(l)) + " vs " +
                          sort_name(sort_of(r)) + ")");
    (void)open;
    return Sequent{l, r};
  }

  ProofNode proof() {
    if (cur_.kind != Token::LParen) fail("expected '(rule ...)'");
    bump();
    if (cur_.kind != Token::Symbol || cur_.text != "rule") fail("expected 'rule'");
    bump();
    if (cur_.kind != Token::Symbol) fail("expected a rule name");
    std::string name = cur_.text;
    bump();
    ProofNode node;
    node.rule = std::move(name);
    node.concl = sequent();
    while (cur_.kind != Token::RParen) {
      if (cur_.kind == Token::End) fail("unexpected end of input inside proof");
      node.kids.push_back(proof());
    }
    bump();
    return node;
  }

  Lexer lex_;
  ParseOptions opt_;
  Token cur_;
};

void render_proof_rec(const ProofNode& p, int depth, std::string& out) {
  out.append(static_cast<size_t>(2 * depth), ' ');
  out += "(rule ";
  out += p.rule;
  out += ' ';
  out += render(p.concl);
  if (p.kids.empty()) {
    out += ')';
    return;
  }
  for (const auto& k : p.kids) {
    out += '\n';
    render_proof_rec(k, depth + 1, out);
  }
  out += ')';
}

}  // namespace

TermPtr parse_term(const std::string& text, const ParseOptions& opt) {
  return Parser(text, opt).term_toplevel();
}

Sequent parse_sequent(const std::string& text, const ParseOptions& opt) {
  return Parser(text, opt).sequent_toplevel();
}

ProofNode parse_proof(const std::string& text) {
  ParseOptions opt;  // concrete proofs: no metavariables
  return Parser(text, opt).proof_toplevel();
}

std::string render_proof(const ProofNode& p) {
  std::string out;
  render_proof_rec(p, 0, out);
  return out;
}

}  // namespace rp

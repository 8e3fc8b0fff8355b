#include "roughproof/term.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <unordered_map>

namespace rp {

std::string sort_name(Sort s) {
  switch (s) {
    case Sort::D: return "D";
    case Sort::KI: return "KI";
    case Sort::KC: return "KC";
  }
  return "?";
}

Sort metasort_type(MetaSort m) {
  switch (m) {
    case MetaSort::StructD:
    case MetaSort::FormD:
    case MetaSort::AtomD: return Sort::D;
    case MetaSort::StructKI:
    case MetaSort::FormKI: return Sort::KI;
    case MetaSort::StructKC:
    case MetaSort::FormKC: return Sort::KC;
  }
  return Sort::D;
}

bool metasort_is_structural(MetaSort m) {
  return m == MetaSort::StructD || m == MetaSort::StructKI || m == MetaSort::StructKC;
}

namespace {

struct SigEntry {
  int arity;
  Sort result;
  std::array<Sort, 2> child;
  bool operational;
  const char* token;
};

// Indexed by Op. Child sorts beyond arity are ignored.
const SigEntry kSig[kOpCount] = {
    /* Atom        */ {0, Sort::D, {Sort::D, Sort::D}, true, ""},
    /* Top         */ {0, Sort::D, {Sort::D, Sort::D}, true, "top"},
    /* Bot         */ {0, Sort::D, {Sort::D, Sort::D}, true, "bot"},
    /* Neg         */ {1, Sort::D, {Sort::D, Sort::D}, true, "neg"},
    /* And         */ {2, Sort::D, {Sort::D, Sort::D}, true, "and"},
    /* Or          */ {2, Sort::D, {Sort::D, Sort::D}, true, "or"},
    /* CircI       */ {1, Sort::D, {Sort::KI, Sort::D}, true, "circI"},
    /* CircC       */ {1, Sort::D, {Sort::KC, Sort::D}, true, "circC"},
    /* BoxI        */ {1, Sort::KI, {Sort::D, Sort::D}, true, "boxI"},
    /* DiamI       */ {1, Sort::KI, {Sort::D, Sort::D}, true, "diamI"},
    /* OneI        */ {0, Sort::KI, {Sort::D, Sort::D}, true, "1I"},
    /* ZeroI       */ {0, Sort::KI, {Sort::D, Sort::D}, true, "0I"},
    /* Cap         */ {2, Sort::KI, {Sort::KI, Sort::KI}, true, "cap"},
    /* Cup         */ {2, Sort::KI, {Sort::KI, Sort::KI}, true, "cup"},
    /* SimK        */ {1, Sort::KI, {Sort::KI, Sort::KI}, true, "simK"},
    /* DiamC       */ {1, Sort::KC, {Sort::D, Sort::D}, true, "diamC"},
    /* BoxC        */ {1, Sort::KC, {Sort::D, Sort::D}, true, "boxC"},
    /* OneC        */ {0, Sort::KC, {Sort::D, Sort::D}, true, "1C"},
    /* ZeroC       */ {0, Sort::KC, {Sort::D, Sort::D}, true, "0C"},
    /* Sqcap       */ {2, Sort::KC, {Sort::KC, Sort::KC}, true, "sqcap"},
    /* Sqcup       */ {2, Sort::KC, {Sort::KC, Sort::KC}, true, "sqcup"},
    /* MinusK      */ {1, Sort::KC, {Sort::KC, Sort::KC}, true, "minusK"},
    /* HatTop      */ {0, Sort::D, {Sort::D, Sort::D}, false, "s-top"},
    /* CheckBot    */ {0, Sort::D, {Sort::D, Sort::D}, false, "s-bot"},
    /* HatAnd      */ {2, Sort::D, {Sort::D, Sort::D}, false, "s-wedge"},
    /* CheckOr     */ {2, Sort::D, {Sort::D, Sort::D}, false, "s-vee"},
    /* TildeNeg    */ {1, Sort::D, {Sort::D, Sort::D}, false, "s-neg"},
    /* HatExcl     */ {2, Sort::D, {Sort::D, Sort::D}, false, "s-excl"},
    /* CheckArrow  */ {2, Sort::D, {Sort::D, Sort::D}, false, "s-arrow"},
    /* TildeCircI  */ {1, Sort::D, {Sort::KI, Sort::D}, false, "s-circI"},
    /* TildeCircC  */ {1, Sort::D, {Sort::KC, Sort::D}, false, "s-circC"},
    /* CheckBoxI   */ {1, Sort::KI, {Sort::D, Sort::D}, false, "s-boxI"},
    /* HatDiamI    */ {1, Sort::KI, {Sort::D, Sort::D}, false, "s-diamI"},
    /* HatOneI     */ {0, Sort::KI, {Sort::D, Sort::D}, false, "s-1I"},
    /* CheckZeroI  */ {0, Sort::KI, {Sort::D, Sort::D}, false, "s-0I"},
    /* HatCap      */ {2, Sort::KI, {Sort::KI, Sort::KI}, false, "s-cap"},
    /* CheckCup    */ {2, Sort::KI, {Sort::KI, Sort::KI}, false, "s-cup"},
    /* HatSupRes   */ {2, Sort::KI, {Sort::KI, Sort::KI}, false, "s-supL"},
    /* CheckSupRes */ {2, Sort::KI, {Sort::KI, Sort::KI}, false, "s-supR"},
    /* TildeSim    */ {1, Sort::KI, {Sort::KI, Sort::KI}, false, "s-sim"},
    /* HatDiamC    */ {1, Sort::KC, {Sort::D, Sort::D}, false, "s-diamC"},
    /* CheckBoxC   */ {1, Sort::KC, {Sort::D, Sort::D}, false, "s-boxC"},
    /* HatOneC     */ {0, Sort::KC, {Sort::D, Sort::D}, false, "s-1C"},
    /* CheckZeroC  */ {0, Sort::KC, {Sort::D, Sort::D}, false, "s-0C"},
    /* HatSqcap    */ {2, Sort::KC, {Sort::KC, Sort::KC}, false, "s-sqcap"},
    /* CheckSqcup  */ {2, Sort::KC, {Sort::KC, Sort::KC}, false, "s-sqcup"},
    /* HatSqsupRes */ {2, Sort::KC, {Sort::KC, Sort::KC}, false, "s-sqsupL"},
    /* CheckSqsupRes*/{2, Sort::KC, {Sort::KC, Sort::KC}, false, "s-sqsupR"},
    /* TildeMinus  */ {1, Sort::KC, {Sort::KC, Sort::KC}, false, "s-minus"},
    /* MetaVar     */ {0, Sort::D, {Sort::D, Sort::D}, false, ""},
};

const SigEntry& sig(Op op) { return kSig[static_cast<int>(op)]; }

uint64_t mix(uint64_t h, uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  return h;
}

uint64_t hash_node(Op op, const std::string& name, MetaSort ms,
                   const std::vector<TermPtr>& kids) {
  uint64_t h = 0x243f6a8885a308d3ull;
  h = mix(h, static_cast<uint64_t>(op) * 0x100000001b3ull);
  h = mix(h, static_cast<uint64_t>(ms));
  for (char c : name) h = mix(h, static_cast<uint64_t>(static_cast<unsigned char>(c)));
  for (const auto& k : kids) h = mix(h, k->hash);
  return h;
}

// True for operational terms whose metavariables (if any) are formula- or
// atom-sorted; these may appear as children of operational constructors.
bool formula_like(const TermPtr& t) {
  if (t->op == Op::MetaVar) return !metasort_is_structural(t->msort);
  if (!op_is_operational(t->op)) return false;
  for (const auto& k : t->kids)
    if (!formula_like(k)) return false;
  return true;
}

}  // namespace

Term::Term(Op o, std::string n, MetaSort m, std::vector<TermPtr> k)
    : op(o), name(std::move(n)), msort(m), kids(std::move(k)),
      hash(hash_node(o, name, m, kids)) {}

int op_arity(Op op) { return sig(op).arity; }
Sort op_result_sort(Op op) { return sig(op).result; }
Sort op_child_sort(Op op, int i) { return sig(op).child[static_cast<size_t>(i)]; }
bool op_is_operational(Op op) { return sig(op).operational; }
bool op_is_structural(Op op) { return !sig(op).operational && op != Op::MetaVar; }

int op_slot_polarity(Op op, int i) {
  switch (op) {
    case Op::Neg:
    case Op::SimK:
    case Op::MinusK:
    case Op::TildeNeg:
    case Op::TildeSim:
    case Op::TildeMinus:
      return -1;
    case Op::HatExcl:
    case Op::CheckArrow:
    case Op::HatSupRes:
    case Op::CheckSupRes:
    case Op::HatSqsupRes:
    case Op::CheckSqsupRes:
      return i == 0 ? -1 : +1;
    default:
      return +1;
  }
}

const char* op_token(Op op) { return sig(op).token; }

std::optional<Op> op_of_token(const std::string& tok) {
  static const std::unordered_map<std::string, Op> table = [] {
    std::unordered_map<std::string, Op> m;
    for (int i = 0; i < kOpCount; ++i) {
      Op op = static_cast<Op>(i);
      if (op == Op::Atom || op == Op::MetaVar) continue;
      m.emplace(op_token(op), op);
    }
    return m;
  }();
  auto it = table.find(tok);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

TermPtr mk(Op op, std::vector<TermPtr> kids) {
  if (op == Op::Atom || op == Op::MetaVar)
    throw std::logic_error("mk: use mk_atom / mk_metavar");
  const SigEntry& e = sig(op);
  if (static_cast<int>(kids.size()) != e.arity)
    throw std::logic_error(std::string("mk: arity mismatch for ") + e.token);
  for (int i = 0; i < e.arity; ++i) {
    if (sort_of(kids[static_cast<size_t>(i)]) != e.child[static_cast<size_t>(i)])
      throw std::logic_error(std::string("mk: child sort mismatch for ") + e.token);
    if (e.operational && !formula_like(kids[static_cast<size_t>(i)]))
      throw std::logic_error(std::string("mk: operational constructor ") + e.token +
                             " applied to a structural child");
  }
  return std::make_shared<Term>(op, "", MetaSort::StructD, std::move(kids));
}

TermPtr mk_atom(const std::string& name) {
  if (name.empty()) throw std::logic_error("mk_atom: empty name");
  return std::make_shared<Term>(Op::Atom, name, MetaSort::StructD, std::vector<TermPtr>{});
}

TermPtr mk_metavar(const std::string& name, MetaSort ms) {
  return std::make_shared<Term>(Op::MetaVar, name, ms, std::vector<TermPtr>{});
}

std::optional<MetaSort> metasort_of_name(const std::string& n) {
  static const std::unordered_map<std::string, MetaSort> table = {
      {"X", MetaSort::StructD},  {"Y", MetaSort::StructD},
      {"Z", MetaSort::StructD},  {"W", MetaSort::StructD},
      {"U", MetaSort::StructD},  {"V", MetaSort::StructD},
      {"GAMMA", MetaSort::StructKI}, {"DELTA", MetaSort::StructKI},
      {"LAMBDA", MetaSort::StructKI}, {"THETA", MetaSort::StructKI},
      {"PI", MetaSort::StructKC}, {"SIGMA", MetaSort::StructKC},
      {"OMEGA", MetaSort::StructKC}, {"RHO", MetaSort::StructKC},
      {"A", MetaSort::FormD},    {"B", MetaSort::FormD},
      {"ALPHA", MetaSort::FormKI}, {"BETA", MetaSort::FormKI},
      {"XI", MetaSort::FormKC},  {"CHI", MetaSort::FormKC},
      {"P", MetaSort::AtomD},    {"Q", MetaSort::AtomD},
  };
  auto it = table.find(n);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

Sort sort_of(const TermPtr& t) {
  if (t->op == Op::MetaVar) return metasort_type(t->msort);
  return op_result_sort(t->op);
}

bool is_formula(const TermPtr& t) {
  if (t->op == Op::MetaVar) return false;
  if (!op_is_operational(t->op)) return false;
  for (const auto& k : t->kids)
    if (!is_formula(k)) return false;
  return true;
}

bool has_metavars(const TermPtr& t) {
  if (t->op == Op::MetaVar) return true;
  for (const auto& k : t->kids)
    if (has_metavars(k)) return true;
  return false;
}

int term_size(const TermPtr& t) {
  int n = 1;
  for (const auto& k : t->kids) n += term_size(k);
  return n;
}

bool term_eq(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return true;
  if (a->hash != b->hash) return false;
  return term_cmp(a, b) == 0;
}

int term_cmp(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return 0;
  if (a->op != b->op) return a->op < b->op ? -1 : 1;
  if (a->op == Op::MetaVar && a->msort != b->msort) return a->msort < b->msort ? -1 : 1;
  if (int c = a->name.compare(b->name); c != 0) return c < 0 ? -1 : 1;
  if (a->kids.size() != b->kids.size()) return a->kids.size() < b->kids.size() ? -1 : 1;
  for (size_t i = 0; i < a->kids.size(); ++i)
    if (int c = term_cmp(a->kids[i], b->kids[i]); c != 0) return c;
  return 0;
}

TermPtr subterm_at(const TermPtr& t, const Path& p) {
  TermPtr cur = t;
  for (int i : p) {
    if (i < 0 || static_cast<size_t>(i) >= cur->kids.size())
      throw std::out_of_range("subterm_at: invalid path");
    cur = cur->kids[static_cast<size_t>(i)];
  }
  return cur;
}

TermPtr replace_at(const TermPtr& t, const Path& p, const TermPtr& repl) {
  if (p.empty()) return repl;
  int i = p.front();
  if (i < 0 || static_cast<size_t>(i) >= t->kids.size())
    throw std::out_of_range("replace_at: invalid path");
  Path rest(p.begin() + 1, p.end());
  std::vector<TermPtr> kids = t->kids;
  kids[static_cast<size_t>(i)] = replace_at(kids[static_cast<size_t>(i)], rest, repl);
  if (t->op == Op::Atom || t->op == Op::MetaVar)
    throw std::out_of_range("replace_at: path into a leaf");
  return mk(t->op, std::move(kids));
}

int path_polarity(const TermPtr& t, const Path& p) {
  int pol = +1;
  TermPtr cur = t;
  for (int i : p) {
    if (i < 0 || static_cast<size_t>(i) >= cur->kids.size())
      throw std::out_of_range("path_polarity: invalid path");
    pol *= op_slot_polarity(cur->op, i);
    cur = cur->kids[static_cast<size_t>(i)];
  }
  return pol;
}

namespace {

bool is_ac(Op op) {
  switch (op) {
    case Op::HatAnd:
    case Op::CheckOr:
    case Op::HatCap:
    case Op::CheckCup:
    case Op::HatSqcap:
    case Op::CheckSqcup:
      return true;
    default:
      return false;
  }
}

Op ac_unit(Op op) {
  switch (op) {
    case Op::HatAnd: return Op::HatTop;
    case Op::CheckOr: return Op::CheckBot;
    case Op::HatCap: return Op::HatOneI;
    case Op::CheckCup: return Op::CheckZeroI;
    case Op::HatSqcap: return Op::HatOneC;
    case Op::CheckSqcup: return Op::CheckZeroC;
    default: throw std::logic_error("ac_unit: not an AC constructor");
  }
}

void flatten_cluster(Op op, const TermPtr& t, std::vector<TermPtr>& out) {
  if (t->op == op) {
    for (const auto& k : t->kids) flatten_cluster(op, k, out);
  } else {
    out.push_back(t);
  }
}

}  // namespace

TermPtr normalize(const TermPtr& t, bool full) {
  if (t->op == Op::MetaVar || t->op == Op::Atom) return t;
  if (op_is_operational(t->op)) return t;  // formulas are left untouched
  std::vector<TermPtr> kids;
  kids.reserve(t->kids.size());
  bool changed = false;
  for (const auto& k : t->kids) {
    TermPtr nk = normalize(k, full);
    changed = changed || nk.get() != k.get();
    kids.push_back(std::move(nk));
  }
  if (!is_ac(t->op)) {
    if (!changed) return t;
    return mk(t->op, std::move(kids));
  }
  std::vector<TermPtr> cluster;
  for (const auto& k : kids) flatten_cluster(t->op, k, cluster);
  TermPtr unit = mk(ac_unit(t->op));
  if (full) {
    cluster.erase(std::remove_if(cluster.begin(), cluster.end(),
                                 [&](const TermPtr& x) { return term_eq(x, unit); }),
                  cluster.end());
  }
  std::stable_sort(cluster.begin(), cluster.end(),
                   [](const TermPtr& a, const TermPtr& b) { return term_cmp(a, b) < 0; });
  if (full) {
    cluster.erase(std::unique(cluster.begin(), cluster.end(),
                              [](const TermPtr& a, const TermPtr& b) { return term_eq(a, b); }),
                  cluster.end());
  }
  if (cluster.empty()) return unit;
  TermPtr acc = cluster[0];
  for (size_t i = 1; i < cluster.size(); ++i)
    acc = mk(t->op, {acc, cluster[i]});
  return acc;
}

Sort sequent_sort(const Sequent& s) {
  Sort l = sort_of(s.lhs), r = sort_of(s.rhs);
  if (l != r)
    throw std::logic_error("sequent_sort: sides have different types (" + sort_name(l) +
                           " vs " + sort_name(r) + ")");
  return l;
}

Sequent normalize(const Sequent& s, bool full) {
  return Sequent{normalize(s.lhs, full), normalize(s.rhs, full)};
}

uint64_t sequent_hash(const Sequent& s) {
  uint64_t h = 0x452821e638d01377ull;
  h = mix(h, s.lhs->hash);
  h = mix(h, s.rhs->hash);
  return h;
}

const TermPtr* subst_find(const Subst& s, const std::string& name) {
  for (const auto& [n, t] : s)
    if (n == name) return &t;
  return nullptr;
}

bool match_term(const TermPtr& schema, const TermPtr& concrete, Subst& out) {
  if (schema->op == Op::MetaVar) {
    if (sort_of(concrete) != metasort_type(schema->msort)) return false;
    switch (schema->msort) {
      case MetaSort::FormD:
      case MetaSort::FormKI:
      case MetaSort::FormKC:
        if (!is_formula(concrete)) return false;
        break;
      case MetaSort::AtomD:
        if (concrete->op != Op::Atom) return false;
        break;
      default:
        break;  // structural metavariables match any term of the type
    }
    if (const TermPtr* bound = subst_find(out, schema->name))
      return term_eq(*bound, concrete);
    out.emplace_back(schema->name, concrete);
    return true;
  }
  if (schema->op != concrete->op) return false;
  if (schema->op == Op::Atom) return schema->name == concrete->name;
  for (size_t i = 0; i < schema->kids.size(); ++i)
    if (!match_term(schema->kids[i], concrete->kids[i], out)) return false;
  return true;
}

bool match_sequent(const Sequent& schema, const Sequent& concrete, Subst& out) {
  return match_term(schema.lhs, concrete.lhs, out) &&
         match_term(schema.rhs, concrete.rhs, out);
}

TermPtr apply_subst(const TermPtr& schema, const Subst& s) {
  if (schema->op == Op::MetaVar) {
    const TermPtr* bound = subst_find(s, schema->name);
    if (!bound) throw std::logic_error("apply_subst: unbound metavariable " + schema->name);
    return *bound;
  }
  if (schema->kids.empty()) return schema;
  std::vector<TermPtr> kids;
  kids.reserve(schema->kids.size());
  for (const auto& k : schema->kids) kids.push_back(apply_subst(k, s));
  return mk(schema->op, std::move(kids));
}

Sequent apply_subst(const Sequent& schema, const Subst& s) {
  return Sequent{apply_subst(schema.lhs, s), apply_subst(schema.rhs, s)};
}

std::string render(const TermPtr& t) {
  if (t->op == Op::Atom || t->op == Op::MetaVar) return t->name;
  if (t->kids.empty()) return op_token(t->op);
  std::string out = "(";
  out += op_token(t->op);
  for (const auto& k : t->kids) {
    out += ' ';
    out += render(k);
  }
  out += ')';
  return out;
}

std::string render(const Sequent& s) {
  return "(seq " + render(s.lhs) + " " + render(s.rhs) + ")";
}

}  // namespace rp

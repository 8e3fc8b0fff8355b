#include "roughproof/algebra.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace rp {
namespace {

std::optional<std::string> lattice_check(const Lattice& L, const std::string& who) {
  const int n = L.n;
  if (n < 1) return who + ": empty carrier";
  if (L.leq.size() != static_cast<size_t>(n) * n) return who + ": leq table has wrong size";
  if (L.meet.size() != static_cast<size_t>(n) * n || L.join.size() != static_cast<size_t>(n) * n)
    return who + ": meet/join table has wrong size";
  for (int a = 0; a < n; ++a)
    if (!L.le(a, a)) return who + ": order not reflexive";
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a != b && L.le(a, b) && L.le(b, a)) return who + ": order not antisymmetric";
      for (int c = 0; c < n; ++c)
        if (L.le(a, b) && L.le(b, c) && !L.le(a, c)) return who + ": order not transitive";
    }
  for (int a = 0; a < n; ++a) {
    if (!L.le(L.bot, a)) return who + ": bot is not a least element";
    if (!L.le(a, L.top)) return who + ": top is not a greatest element";
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int m = L.mt(a, b), j = L.jn(a, b);
      if (m < 0 || m >= n || j < 0 || j >= n) return who + ": meet/join entry out of range";
      if (!L.le(m, a) || !L.le(m, b)) return who + ": meet is not a lower bound";
      if (!L.le(a, j) || !L.le(b, j)) return who + ": join is not an upper bound";
      for (int c = 0; c < n; ++c) {
        if (L.le(c, a) && L.le(c, b) && !L.le(c, m)) return who + ": meet is not greatest";
        if (L.le(a, c) && L.le(b, c) && !L.le(j, c)) return who + ": join is not least";
      }
    }
  return std::nullopt;
}

std::optional<std::string> de_morgan_check(const Lattice& L, const std::vector<uint8_t>& neg,
                                           const std::string& who) {
  if (neg.size() != static_cast<size_t>(L.n)) return who + ": negation table has wrong size";
  for (int a = 0; a < L.n; ++a) {
    if (neg[a] >= L.n) return who + ": negation entry out of range";
    if (neg[neg[a]] != a) return who + ": negation is not an involution";
  }
  for (int a = 0; a < L.n; ++a)
    for (int b = 0; b < L.n; ++b)
      if (L.le(a, b) && !L.le(neg[b], neg[a])) return who + ": negation is not order-reversing";
  return std::nullopt;
}

const Lattice& carrier_of(const HetAlgebra& h, Sort s) {
  switch (s) {
    case Sort::D: return h.D;
    case Sort::KI: return h.LI;
    default: return h.LC;
  }
}

int env_get(const Env& env, const std::string& name) {
  for (const auto& [k, v] : env)
    if (k == name) return v;
  throw std::runtime_error("unbound name in evaluation: " + name);
}

void collect_atoms(const TermPtr& t, std::set<std::string>& out) {
  if (t->op == Op::Atom) out.insert(t->name);
  for (const auto& k : t->kids) collect_atoms(k, out);
}

void collect_metavars(const TermPtr& t, std::map<std::string, MetaSort>& out) {
  if (t->op == Op::MetaVar) out.emplace(t->name, t->msort);
  for (const auto& k : t->kids) collect_metavars(k, out);
}

Sort sort_of_metasort(MetaSort m) {
  switch (m) {
    case MetaSort::StructKI:
    case MetaSort::FormKI: return Sort::KI;
    case MetaSort::StructKC:
    case MetaSort::FormKC: return Sort::KC;
    default: return Sort::D;
  }
}

bool uses_kernel_negation(const TermPtr& t) {
  if (t->op == Op::SimK || t->op == Op::MinusK || t->op == Op::TildeSim ||
      t->op == Op::TildeMinus)
    return true;
  for (const auto& k : t->kids)
    if (uses_kernel_negation(k)) return true;
  return false;
}

// max of {y : p(y)} in L, assuming the set is nonempty and join-closed.
template <typename Pred>
int max_such(const Lattice& L, Pred p) {
  int acc = -1;
  for (int y = 0; y < L.n; ++y)
    if (p(y)) acc = (acc < 0) ? y : L.jn(acc, y);
  if (acc < 0) throw std::runtime_error("residual scan found no witness");
  return acc;
}

// min of {y : p(y)} in L, assuming the set is nonempty and meet-closed.
template <typename Pred>
int min_such(const Lattice& L, Pred p) {
  int acc = -1;
  for (int y = 0; y < L.n; ++y)
    if (p(y)) acc = (acc < 0) ? y : L.mt(acc, y);
  if (acc < 0) throw std::runtime_error("residual scan found no witness");
  return acc;
}

}  // namespace

std::optional<Lattice> Lattice::from_leq(int n, std::vector<uint8_t> leq) {
  if (n < 1 || leq.size() != static_cast<size_t>(n) * n) return std::nullopt;
  Lattice L;
  L.n = n;
  L.leq = std::move(leq);
  for (int a = 0; a < n; ++a)
    if (!L.le(a, a)) return std::nullopt;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a != b && L.le(a, b) && L.le(b, a)) return std::nullopt;
      for (int c = 0; c < n; ++c)
        if (L.le(a, b) && L.le(b, c) && !L.le(a, c)) return std::nullopt;
    }
  L.meet.assign(static_cast<size_t>(n) * n, 0);
  L.join.assign(static_cast<size_t>(n) * n, 0);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      int m = -1, j = -1;
      for (int c = 0; c < n; ++c) {
        if (L.le(c, a) && L.le(c, b)) {
          bool greatest = true;
          for (int d = 0; d < n; ++d)
            if (L.le(d, a) && L.le(d, b) && !L.le(d, c)) greatest = false;
          if (greatest) m = c;
        }
        if (L.le(a, c) && L.le(b, c)) {
          bool least = true;
          for (int d = 0; d < n; ++d)
            if (L.le(a, d) && L.le(b, d) && !L.le(c, d)) least = false;
          if (least) j = c;
        }
      }
      if (m < 0 || j < 0) return std::nullopt;
      L.meet[static_cast<size_t>(a) * n + b] = static_cast<uint8_t>(m);
      L.join[static_cast<size_t>(a) * n + b] = static_cast<uint8_t>(j);
    }
  int bot = 0, top = 0;
  for (int a = 0; a < n; ++a) {
    bot = L.mt(bot, a);
    top = L.jn(top, a);
  }
  L.bot = bot;
  L.top = top;
  return L;
}

bool Lattice::distributive() const {
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (mt(a, jn(b, c)) != jn(mt(a, b), mt(a, c))) return false;
  return true;
}

std::string alg_class_name(AlgClass c) {
  switch (c) {
    case AlgClass::tqBa: return "tqBa";
    case AlgClass::tqBa5: return "tqBa5";
    case AlgClass::IA1: return "IA1";
    case AlgClass::IA2: return "IA2";
    case AlgClass::IA3: return "IA3";
    default: return "pra";
  }
}

std::optional<AlgClass> alg_class_of_name(const std::string& name) {
  std::string s;
  for (char ch : name) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  if (s.size() > 1 && s[0] == 'h') s.erase(s.begin());
  if (s == "tqba") return AlgClass::tqBa;
  if (s == "tqba5") return AlgClass::tqBa5;
  if (s == "ia1") return AlgClass::IA1;
  if (s == "ia2") return AlgClass::IA2;
  if (s == "ia3") return AlgClass::IA3;
  if (s == "pra") return AlgClass::pra;
  return std::nullopt;
}

std::optional<std::string> validate_single(const SingleAlgebra& a) {
  if (auto err = lattice_check(a.lat, "lattice")) return err;
  if (!a.lat.distributive()) return "lattice is not distributive";
  if (auto err = de_morgan_check(a.lat, a.neg, "negation")) return err;
  const int n = a.lat.n;
  if (a.intr.size() != static_cast<size_t>(n)) return "interior table has wrong size";
  for (int x = 0; x < n; ++x)
    if (a.intr[x] >= n) return "interior entry out of range";
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (a.intr[a.lat.mt(x, y)] != a.lat.mt(a.intr[x], a.intr[y]))
        return "interior does not distribute over meet";
  for (int x = 0; x < n; ++x) {
    if (a.intr[a.intr[x]] != a.intr[x]) return "interior is not idempotent";
    if (!a.lat.le(a.intr[x], x)) return "interior is not contracting";
  }
  if (a.intr[a.lat.top] != a.lat.top) return "interior does not fix top";
  return std::nullopt;
}

uint8_t classify(const SingleAlgebra& a) {
  const int n = a.lat.n;
  uint8_t mask = 1 << static_cast<int>(AlgClass::tqBa);

  bool t5 = true;
  for (int x = 0; x < n && t5; ++x)
    if (a.clos(a.intr[x]) != a.intr[x]) t5 = false;
  if (!t5) return mask;
  mask |= 1 << static_cast<int>(AlgClass::tqBa5);

  bool t6 = true;
  for (int x = 0; x < n && t6; ++x)
    if (a.lat.jn(a.intr[x], a.neg[a.intr[x]]) != a.lat.top) t6 = false;
  if (t6) mask |= 1 << static_cast<int>(AlgClass::IA1);

  bool t7 = true;
  for (int x = 0; x < n && t7; ++x)
    for (int y = 0; y < n && t7; ++y)
      if (a.intr[a.lat.jn(x, y)] != a.lat.jn(a.intr[x], a.intr[y])) t7 = false;
  if (t7) mask |= 1 << static_cast<int>(AlgClass::IA2);

  bool t8 = true;
  for (int x = 0; x < n && t8; ++x)
    for (int y = 0; y < n && t8; ++y)
      if (a.lat.le(a.intr[x], a.intr[y]) && a.lat.le(a.clos(x), a.clos(y)) && !a.lat.le(x, y))
        t8 = false;
  if (t8) mask |= 1 << static_cast<int>(AlgClass::IA3);

  if (t6 && t7 && t8) mask |= 1 << static_cast<int>(AlgClass::pra);
  return mask;
}

std::vector<int> open_elements(const SingleAlgebra& a) {
  std::vector<int> out;
  for (int x = 0; x < a.lat.n; ++x)
    if (a.intr[x] == x) out.push_back(x);
  return out;
}

std::vector<int> closed_elements(const SingleAlgebra& a) {
  std::vector<int> out;
  for (int x = 0; x < a.lat.n; ++x)
    if (a.clos(x) == x) out.push_back(x);
  return out;
}

std::optional<std::string> validate_het(const HetAlgebra& h) {
  if (auto err = lattice_check(h.D, "base lattice")) return err;
  if (!h.D.distributive()) return "base lattice is not distributive";
  if (auto err = de_morgan_check(h.D, h.negD, "base negation")) return err;
  if (auto err = lattice_check(h.LI, "interior-kernel lattice")) return err;
  if (!h.LI.distributive()) return "interior-kernel lattice is not distributive";
  if (auto err = lattice_check(h.LC, "closure-kernel lattice")) return err;
  if (!h.LC.distributive()) return "closure-kernel lattice is not distributive";

  const int nD = h.D.n, nI = h.LI.n, nC = h.LC.n;
  if (h.eI.size() != static_cast<size_t>(nI)) return "eI table has wrong size";
  if (h.eC.size() != static_cast<size_t>(nC)) return "eC table has wrong size";
  if (h.iota.size() != static_cast<size_t>(nD)) return "iota table has wrong size";
  if (h.gamma.size() != static_cast<size_t>(nD)) return "gamma table has wrong size";
  if (h.iotaAdj.size() != static_cast<size_t>(nD)) return "iota adjoint table has wrong size";
  if (h.gammaAdj.size() != static_cast<size_t>(nD)) return "gamma adjoint table has wrong size";

  // embeddings: injective bounded lattice homomorphisms
  for (int x = 0; x < nI; ++x)
    for (int y = 0; y < nI; ++y) {
      if (x != y && h.eI[x] == h.eI[y]) return "eI is not injective";
      if (h.eI[h.LI.mt(x, y)] != h.D.mt(h.eI[x], h.eI[y])) return "eI does not preserve meet";
      if (h.eI[h.LI.jn(x, y)] != h.D.jn(h.eI[x], h.eI[y])) return "eI does not preserve join";
    }
  if (h.eI[h.LI.bot] != h.D.bot || h.eI[h.LI.top] != h.D.top)
    return "eI does not preserve the bounds";
  for (int x = 0; x < nC; ++x)
    for (int y = 0; y < nC; ++y) {
      if (x != y && h.eC[x] == h.eC[y]) return "eC is not injective";
      if (h.eC[h.LC.mt(x, y)] != h.D.mt(h.eC[x], h.eC[y])) return "eC does not preserve meet";
      if (h.eC[h.LC.jn(x, y)] != h.D.jn(h.eC[x], h.eC[y])) return "eC does not preserve join";
    }
  if (h.eC[h.LC.bot] != h.D.bot || h.eC[h.LC.top] != h.D.top)
    return "eC does not preserve the bounds";

  // iota preserves meets and bounds; gamma preserves joins and bounds
  for (int a = 0; a < nD; ++a)
    for (int b = 0; b < nD; ++b) {
      if (h.iota[h.D.mt(a, b)] != h.LI.mt(h.iota[a], h.iota[b]))
        return "iota does not preserve meet";
      if (h.gamma[h.D.jn(a, b)] != h.LC.jn(h.gamma[a], h.gamma[b]))
        return "gamma does not preserve join";
    }
  if (h.iota[h.D.top] != h.LI.top || h.iota[h.D.bot] != h.LI.bot)
    return "iota does not preserve the bounds";
  if (h.gamma[h.D.top] != h.LC.top || h.gamma[h.D.bot] != h.LC.bot)
    return "gamma does not preserve the bounds";

  // adjunctions and retractions
  for (int al = 0; al < nI; ++al)
    for (int a = 0; a < nD; ++a)
      if (h.D.le(h.eI[al], a) != h.LI.le(al, h.iota[a]))
        return "eI and iota are not adjoint";
  for (int a = 0; a < nD; ++a)
    for (int xi = 0; xi < nC; ++xi)
      if (h.LC.le(h.gamma[a], xi) != h.D.le(a, h.eC[xi]))
        return "gamma and eC are not adjoint";
  for (int al = 0; al < nI; ++al)
    if (h.iota[h.eI[al]] != al) return "iota does not retract eI";
  for (int xi = 0; xi < nC; ++xi)
    if (h.gamma[h.eC[xi]] != xi) return "gamma does not retract eC";

  // interaction of the two kernels through the base negation
  for (int a = 0; a < nD; ++a)
    if (h.eC[h.gamma[a]] != h.negD[h.eI[h.iota[h.negD[a]]]])
      return "closure and interior kernels disagree through negation";

  // derived adjoint tables
  for (int a = 0; a < nD; ++a) {
    if (!h.D.le(a, h.eI[h.iotaAdj[a]])) return "iota adjoint table is not an upper bound";
    for (int al = 0; al < nI; ++al)
      if (h.D.le(a, h.eI[al]) && !h.LI.le(h.iotaAdj[a], al))
        return "iota adjoint table is not least";
    if (!h.D.le(h.eC[h.gammaAdj[a]], a)) return "gamma adjoint table is not a lower bound";
    for (int xi = 0; xi < nC; ++xi)
      if (h.D.le(h.eC[xi], a) && !h.LC.le(xi, h.gammaAdj[a]))
        return "gamma adjoint table is not greatest";
  }

  if (h.has_kernel_neg) {
    if (auto err = de_morgan_check(h.LI, h.simI, "interior-kernel negation")) return err;
    if (auto err = de_morgan_check(h.LC, h.minusC, "closure-kernel negation")) return err;
    for (int al = 0; al < nI; ++al)
      if (h.eI[h.simI[al]] != h.negD[h.eI[al]])
        return "eI does not commute with the kernel negation";
    for (int xi = 0; xi < nC; ++xi)
      if (h.eC[h.minusC[xi]] != h.negD[h.eC[xi]])
        return "eC does not commute with the kernel negation";
  }
  return std::nullopt;
}

uint8_t classify_het(const HetAlgebra& h) {
  uint8_t mask = 1 << static_cast<int>(AlgClass::tqBa);
  const bool same_kernel = h.LI.n == h.LC.n && h.LI.leq == h.LC.leq && h.eI == h.eC;
  const bool five = same_kernel && h.has_kernel_neg && h.simI == h.minusC;
  if (!five) return mask;
  mask |= 1 << static_cast<int>(AlgClass::tqBa5);

  bool boolean = true;
  for (int al = 0; al < h.LI.n && boolean; ++al)
    if (h.LI.jn(al, h.simI[al]) != h.LI.top || h.LI.mt(al, h.simI[al]) != h.LI.bot)
      boolean = false;
  if (boolean) mask |= 1 << static_cast<int>(AlgClass::IA1);

  bool join_pres = true;
  for (int a = 0; a < h.D.n && join_pres; ++a)
    for (int b = 0; b < h.D.n && join_pres; ++b)
      if (h.iota[h.D.jn(a, b)] != h.LI.jn(h.iota[a], h.iota[b])) join_pres = false;
  if (join_pres) mask |= 1 << static_cast<int>(AlgClass::IA2);

  bool joint_reflect = true;
  for (int a = 0; a < h.D.n && joint_reflect; ++a)
    for (int b = 0; b < h.D.n && joint_reflect; ++b)
      if (h.LI.le(h.iota[a], h.iota[b]) && h.LC.le(h.gamma[a], h.gamma[b]) && !h.D.le(a, b))
        joint_reflect = false;
  if (joint_reflect) mask |= 1 << static_cast<int>(AlgClass::IA3);

  if (boolean && join_pres && joint_reflect) mask |= 1 << static_cast<int>(AlgClass::pra);
  return mask;
}

HetAlgebra to_heterogeneous(const SingleAlgebra& a) {
  HetAlgebra h;
  h.D = a.lat;
  h.negD = a.neg;
  const int n = a.lat.n;

  const std::vector<int> opens = open_elements(a);
  const std::vector<int> closeds = closed_elements(a);
  auto sub_lattice = [&](const std::vector<int>& elems) {
    const int m = static_cast<int>(elems.size());
    std::vector<uint8_t> leq(static_cast<size_t>(m) * m, 0);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        leq[static_cast<size_t>(i) * m + j] = a.lat.le(elems[i], elems[j]) ? 1 : 0;
    auto L = Lattice::from_leq(m, std::move(leq));
    if (!L) throw std::runtime_error("kernel is not a lattice");
    return *L;
  };
  auto index_of = [](const std::vector<int>& elems, int x) {
    const auto it = std::find(elems.begin(), elems.end(), x);
    if (it == elems.end()) throw std::runtime_error("kernel element lookup failed");
    return static_cast<int>(it - elems.begin());
  };

  h.LI = sub_lattice(opens);
  h.LC = sub_lattice(closeds);
  h.eI.resize(opens.size());
  for (size_t i = 0; i < opens.size(); ++i) h.eI[i] = static_cast<uint8_t>(opens[i]);
  h.eC.resize(closeds.size());
  for (size_t i = 0; i < closeds.size(); ++i) h.eC[i] = static_cast<uint8_t>(closeds[i]);
  h.iota.resize(n);
  h.gamma.resize(n);
  h.iotaAdj.resize(n);
  h.gammaAdj.resize(n);
  for (int x = 0; x < n; ++x) {
    h.iota[x] = static_cast<uint8_t>(index_of(opens, a.intr[x]));
    h.gamma[x] = static_cast<uint8_t>(index_of(closeds, a.clos(x)));
    int least = -1;
    for (int i = 0; i < h.LI.n; ++i)
      if (a.lat.le(x, opens[i])) least = (least < 0) ? i : h.LI.mt(least, i);
    h.iotaAdj[x] = static_cast<uint8_t>(least);
    int greatest = -1;
    for (int i = 0; i < h.LC.n; ++i)
      if (a.lat.le(closeds[i], x)) greatest = (greatest < 0) ? i : h.LC.jn(greatest, i);
    h.gammaAdj[x] = static_cast<uint8_t>(greatest);
  }

  if (has_class(classify(a), AlgClass::tqBa5)) {
    h.has_kernel_neg = true;
    h.simI.resize(opens.size());
    for (size_t i = 0; i < opens.size(); ++i)
      h.simI[i] = static_cast<uint8_t>(index_of(opens, a.neg[opens[i]]));
    h.minusC.resize(closeds.size());
    for (size_t i = 0; i < closeds.size(); ++i)
      h.minusC[i] = static_cast<uint8_t>(index_of(closeds, a.neg[closeds[i]]));
  }
  return h;
}

SingleAlgebra to_single(const HetAlgebra& h) {
  SingleAlgebra a;
  a.lat = h.D;
  a.neg = h.negD;
  a.intr.resize(h.D.n);
  for (int x = 0; x < h.D.n; ++x) a.intr[x] = h.eI[h.iota[x]];
  return a;
}

bool is_isomorphic(const SingleAlgebra& a, const SingleAlgebra& b) {
  if (a.lat.n != b.lat.n) return false;
  const int n = a.lat.n;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  do {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) {
      if (b.neg[p[x]] != p[a.neg[x]] || b.intr[p[x]] != p[a.intr[x]]) ok = false;
      for (int y = 0; y < n && ok; ++y)
        if (a.lat.le(x, y) != b.lat.le(p[x], p[y])) ok = false;
    }
    if (ok) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

bool is_isomorphic_het(const HetAlgebra& a, const HetAlgebra& b) {
  if (a.D.n != b.D.n || a.LI.n != b.LI.n || a.LC.n != b.LC.n) return false;
  if (a.has_kernel_neg != b.has_kernel_neg) return false;
  const int n = a.D.n;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  auto image_index = [](const std::vector<uint8_t>& emb, int d) {
    for (size_t i = 0; i < emb.size(); ++i)
      if (emb[i] == d) return static_cast<int>(i);
    return -1;
  };
  do {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x) {
      if (b.negD[p[x]] != p[a.negD[x]]) ok = false;
      for (int y = 0; y < n && ok; ++y)
        if (a.D.le(x, y) != b.D.le(p[x], p[y])) ok = false;
    }
    if (!ok) continue;
    // induced kernel maps must land in the images and commute with everything
    std::vector<int> fI(a.LI.n), fC(a.LC.n);
    for (int al = 0; al < a.LI.n && ok; ++al) {
      fI[al] = image_index(b.eI, p[a.eI[al]]);
      if (fI[al] < 0) ok = false;
    }
    for (int xi = 0; xi < a.LC.n && ok; ++xi) {
      fC[xi] = image_index(b.eC, p[a.eC[xi]]);
      if (fC[xi] < 0) ok = false;
    }
    for (int x = 0; x < n && ok; ++x) {
      if (fI[a.iota[x]] != b.iota[p[x]]) ok = false;
      if (ok && fC[a.gamma[x]] != b.gamma[p[x]]) ok = false;
    }
    if (ok && a.has_kernel_neg) {
      for (int al = 0; al < a.LI.n && ok; ++al)
        if (fI[a.simI[al]] != b.simI[fI[al]]) ok = false;
      for (int xi = 0; xi < a.LC.n && ok; ++xi)
        if (fC[a.minusC[xi]] != b.minusC[fC[xi]]) ok = false;
    }
    if (ok) return true;
  } while (std::next_permutation(p.begin(), p.end()));
  return false;
}

int eval_term(const HetAlgebra& h, const TermPtr& t, const Env& atoms, const Env& metas) {
  auto ev = [&](const TermPtr& k) { return eval_term(h, k, atoms, metas); };
  switch (t->op) {
    case Op::Atom: return env_get(atoms, t->name);
    case Op::MetaVar: return env_get(metas, t->name);

    case Op::Top:
    case Op::HatTop: return h.D.top;
    case Op::Bot:
    case Op::CheckBot: return h.D.bot;
    case Op::Neg:
    case Op::TildeNeg: return h.negD[ev(t->kids[0])];
    case Op::And:
    case Op::HatAnd: return h.D.mt(ev(t->kids[0]), ev(t->kids[1]));
    case Op::Or:
    case Op::CheckOr: return h.D.jn(ev(t->kids[0]), ev(t->kids[1]));
    case Op::CircI:
    case Op::TildeCircI: return h.eI[ev(t->kids[0])];
    case Op::CircC:
    case Op::TildeCircC: return h.eC[ev(t->kids[0])];

    case Op::BoxI:
    case Op::CheckBoxI: return h.iota[ev(t->kids[0])];
    case Op::DiamI:
    case Op::HatDiamI: return h.iotaAdj[ev(t->kids[0])];
    case Op::OneI:
    case Op::HatOneI: return h.LI.top;
    case Op::ZeroI:
    case Op::CheckZeroI: return h.LI.bot;
    case Op::Cap:
    case Op::HatCap: return h.LI.mt(ev(t->kids[0]), ev(t->kids[1]));
    case Op::Cup:
    case Op::CheckCup: return h.LI.jn(ev(t->kids[0]), ev(t->kids[1]));
    case Op::SimK:
    case Op::TildeSim:
      if (!h.has_kernel_neg) throw std::runtime_error("algebra has no kernel negation");
      return h.simI[ev(t->kids[0])];

    case Op::DiamC:
    case Op::HatDiamC: return h.gamma[ev(t->kids[0])];
    case Op::BoxC:
    case Op::CheckBoxC: return h.gammaAdj[ev(t->kids[0])];
    case Op::OneC:
    case Op::HatOneC: return h.LC.top;
    case Op::ZeroC:
    case Op::CheckZeroC: return h.LC.bot;
    case Op::Sqcap:
    case Op::HatSqcap: return h.LC.mt(ev(t->kids[0]), ev(t->kids[1]));
    case Op::Sqcup:
    case Op::CheckSqcup: return h.LC.jn(ev(t->kids[0]), ev(t->kids[1]));
    case Op::MinusK:
    case Op::TildeMinus:
      if (!h.has_kernel_neg) throw std::runtime_error("algebra has no kernel negation");
      return h.minusC[ev(t->kids[0])];

    case Op::CheckArrow: {  // greatest y with x ∧ y ≤ z
      const int x = ev(t->kids[0]), z = ev(t->kids[1]);
      return max_such(h.D, [&](int y) { return h.D.le(h.D.mt(x, y), z); });
    }
    case Op::HatExcl: {  // least z with x ≤ y ∨ z
      const int y = ev(t->kids[0]), x = ev(t->kids[1]);
      return min_such(h.D, [&](int z) { return h.D.le(x, h.D.jn(y, z)); });
    }
    case Op::CheckSupRes: {  // greatest δ with γ ∩ δ ≤ λ
      const int g = ev(t->kids[0]), l = ev(t->kids[1]);
      return max_such(h.LI, [&](int d) { return h.LI.le(h.LI.mt(g, d), l); });
    }
    case Op::HatSupRes: {  // least λ with γ ≤ δ ∪ λ
      const int d = ev(t->kids[0]), g = ev(t->kids[1]);
      return min_such(h.LI, [&](int l) { return h.LI.le(g, h.LI.jn(d, l)); });
    }
    case Op::CheckSqsupRes: {
      const int g = ev(t->kids[0]), l = ev(t->kids[1]);
      return max_such(h.LC, [&](int d) { return h.LC.le(h.LC.mt(g, d), l); });
    }
    case Op::HatSqsupRes: {
      const int d = ev(t->kids[0]), g = ev(t->kids[1]);
      return min_such(h.LC, [&](int l) { return h.LC.le(g, h.LC.jn(d, l)); });
    }
    default: throw std::runtime_error("term cannot be evaluated");
  }
}

bool seq_holds_under(const HetAlgebra& h, const Sequent& s, const Env& atoms,
                     const Env& metas) {
  const Sort srt = sequent_sort(s);
  return carrier_of(h, srt).le(eval_term(h, s.lhs, atoms, metas),
                               eval_term(h, s.rhs, atoms, metas));
}

std::optional<Env> find_falsifying(const HetAlgebra& h, const Sequent& s) {
  std::set<std::string> names;
  collect_atoms(s.lhs, names);
  collect_atoms(s.rhs, names);
  Env env;
  for (const auto& nm : names) env.emplace_back(nm, 0);
  const int n = h.D.n;
  while (true) {
    if (!seq_holds_under(h, s, env)) return env;
    size_t i = 0;
    for (; i < env.size(); ++i) {
      if (++env[i].second < n) break;
      env[i].second = 0;
    }
    if (i == env.size()) return std::nullopt;
    if (env.empty()) return std::nullopt;
  }
}

bool seq_valid(const HetAlgebra& h, const Sequent& s) { return !find_falsifying(h, s).has_value(); }

bool rule_applicable(const Rule& r, const HetAlgebra& h) {
  if (h.has_kernel_neg) return true;
  for (const auto& p : r.premises)
    if (uses_kernel_negation(p.lhs) || uses_kernel_negation(p.rhs)) return false;
  return !uses_kernel_negation(r.conclusion.lhs) && !uses_kernel_negation(r.conclusion.rhs);
}

std::optional<std::string> check_rule_soundness(const Rule& r, const HetAlgebra& h) {
  std::map<std::string, MetaSort> vars;
  for (const auto& p : r.premises) {
    collect_metavars(p.lhs, vars);
    collect_metavars(p.rhs, vars);
  }
  collect_metavars(r.conclusion.lhs, vars);
  collect_metavars(r.conclusion.rhs, vars);

  Env metas;
  std::vector<int> sizes;
  for (const auto& [name, ms] : vars) {
    metas.emplace_back(name, 0);
    sizes.push_back(carrier_of(h, sort_of_metasort(ms)).n);
  }

  auto describe = [&](const char* direction) {
    std::ostringstream os;
    os << r.name << " " << direction << " fails under";
    for (const auto& [name, v] : metas) os << " " << name << "=" << v;
    return os.str();
  };

  while (true) {
    bool premises_ok = true;
    for (const auto& p : r.premises)
      if (!seq_holds_under(h, p, {}, metas)) {
        premises_ok = false;
        break;
      }
    if (premises_ok && !seq_holds_under(h, r.conclusion, {}, metas))
      return describe("(downward)");
    if (r.bidirectional && seq_holds_under(h, r.conclusion, {}, metas) &&
        !seq_holds_under(h, r.premises[0], {}, metas))
      return describe("(upward)");

    size_t i = 0;
    for (; i < metas.size(); ++i) {
      if (++metas[i].second < sizes[i]) break;
      metas[i].second = 0;
    }
    if (i == metas.size()) return std::nullopt;
    if (metas.empty()) return std::nullopt;
  }
}

std::string render_alg(const SingleAlgebra& a) {
  std::ostringstream os;
  const int n = a.lat.n;
  os << "alg v1\n";
  os << "n " << n << "\n";
  os << "leq";
  for (int i = 0; i < n; ++i) {
    os << " ";
    for (int j = 0; j < n; ++j) os << (a.lat.le(i, j) ? '1' : '0');
  }
  os << "\nneg";
  for (int i = 0; i < n; ++i) os << " " << static_cast<int>(a.neg[i]);
  os << "\nint";
  for (int i = 0; i < n; ++i) os << " " << static_cast<int>(a.intr[i]);
  os << "\n";
  return os.str();
}

SingleAlgebra parse_alg(const std::string& text) {
  std::istringstream is(text);
  std::string word;
  auto expect = [&](const std::string& w) {
    if (!(is >> word) || word != w)
      throw std::runtime_error("malformed algebra file: expected '" + w + "'");
  };
  expect("alg");
  expect("v1");
  expect("n");
  int n = 0;
  if (!(is >> n) || n < 1 || n > 64) throw std::runtime_error("malformed algebra file: bad size");
  expect("leq");
  std::vector<uint8_t> leq(static_cast<size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) {
    if (!(is >> word) || word.size() != static_cast<size_t>(n))
      throw std::runtime_error("malformed algebra file: bad order row");
    for (int j = 0; j < n; ++j) {
      if (word[j] != '0' && word[j] != '1')
        throw std::runtime_error("malformed algebra file: bad order bit");
      leq[static_cast<size_t>(i) * n + j] = word[j] == '1' ? 1 : 0;
    }
  }
  auto lat = Lattice::from_leq(n, std::move(leq));
  if (!lat) throw std::runtime_error("malformed algebra file: order is not a lattice");
  SingleAlgebra a;
  a.lat = *lat;
  auto read_table = [&](const std::string& key, std::vector<uint8_t>& out) {
    expect(key);
    out.resize(n);
    for (int i = 0; i < n; ++i) {
      int v = -1;
      if (!(is >> v) || v < 0 || v >= n)
        throw std::runtime_error("malformed algebra file: bad " + key + " entry");
      out[i] = static_cast<uint8_t>(v);
    }
  };
  read_table("neg", a.neg);
  read_table("int", a.intr);
  return a;
}

std::string canonical_key(const SingleAlgebra& a) {
  const int n = a.lat.n;
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::string best;
  do {
    std::string s;
    s.reserve(static_cast<size_t>(n) * n + 2 * n + 8);
    s += std::to_string(n);
    s += ':';
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        // relabeled order: new label p[x] plays the role of x
        int x = 0, y = 0;
        for (int k = 0; k < n; ++k) {
          if (p[k] == i) x = k;
          if (p[k] == j) y = k;
        }
        s += a.lat.le(x, y) ? '1' : '0';
      }
    s += '|';
    for (int i = 0; i < n; ++i) {
      int x = 0;
      for (int k = 0; k < n; ++k)
        if (p[k] == i) x = k;
      s += static_cast<char>('0' + p[a.neg[x]]);
    }
    s += '|';
    for (int i = 0; i < n; ++i) {
      int x = 0;
      for (int k = 0; k < n; ++k)
        if (p[k] == i) x = k;
      s += static_cast<char>('0' + p[a.intr[x]]);
    }
    if (best.empty() || s < best) best = std::move(s);
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

std::optional<Countermodel> countermodel(const Sequent& s, AlgClass cls, int max_size, int jobs) {
  EnumOptions opt;
  opt.max_size = max_size;
  opt.cls = cls;
  opt.jobs = jobs;
  for (const auto& alg : enumerate_algebras_cached(opt)) {
    const HetAlgebra h = to_heterogeneous(alg);
    if (auto env = find_falsifying(h, s)) return Countermodel{alg, *env};
  }
  return std::nullopt;
}

}  // namespace rp

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>

#include "doctest.h"
#include "roughproof/algebra.hpp"
#include "roughproof/parser.hpp"

using namespace rp;

namespace {

Lattice chain(int n) {
  std::vector<uint8_t> leq(static_cast<size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) leq[static_cast<size_t>(i) * n + j] = 1;
  return *Lattice::from_leq(n, leq);
}

// 0 < x(1), y(2) < 3
Lattice diamond() {
  std::vector<uint8_t> leq(16, 0);
  auto set = [&](int i, int j) { leq[static_cast<size_t>(i) * 4 + j] = 1; };
  for (int i = 0; i < 4; ++i) set(i, i);
  set(0, 1);
  set(0, 2);
  set(0, 3);
  set(1, 3);
  set(2, 3);
  return *Lattice::from_leq(4, leq);
}

SingleAlgebra two_element() {
  SingleAlgebra a;
  a.lat = chain(2);
  a.neg = {1, 0};
  a.intr = {0, 1};
  return a;
}

SingleAlgebra chain3_alg(int ia) {
  SingleAlgebra a;
  a.lat = chain(3);
  a.neg = {2, 1, 0};
  a.intr = {0, static_cast<uint8_t>(ia), 2};
  return a;
}

SingleAlgebra chain4_alg(int ia, int ib) {
  SingleAlgebra a;
  a.lat = chain(4);
  a.neg = {3, 2, 1, 0};
  a.intr = {0, static_cast<uint8_t>(ia), static_cast<uint8_t>(ib), 3};
  return a;
}

// the four-element lattice 0 < x,y < 1 with either the complement negation
// (swapping x and y) or the negation fixing both
SingleAlgebra diamond_alg(bool swap_neg, int ix, int iy) {
  SingleAlgebra a;
  a.lat = diamond();
  a.neg = swap_neg ? std::vector<uint8_t>{3, 2, 1, 0} : std::vector<uint8_t>{3, 1, 2, 0};
  a.intr = {0, static_cast<uint8_t>(ix), static_cast<uint8_t>(iy), 3};
  return a;
}

SingleAlgebra relabel(const SingleAlgebra& a, const std::vector<int>& p) {
  const int n = a.lat.n;
  std::vector<uint8_t> leq(static_cast<size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      leq[static_cast<size_t>(p[i]) * n + p[j]] = a.lat.le(i, j) ? 1 : 0;
  SingleAlgebra b;
  b.lat = *Lattice::from_leq(n, leq);
  b.neg.assign(n, 0);
  b.intr.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    b.neg[p[i]] = static_cast<uint8_t>(p[a.neg[i]]);
    b.intr[p[i]] = static_cast<uint8_t>(p[a.intr[i]]);
  }
  return b;
}

TermPtr pt(const std::string& s) {
  ParseOptions po;
  return parse_term(s, po);
}

Sequent ps(const std::string& s) {
  ParseOptions po;
  return parse_sequent(s, po);
}

int count_of(AlgClass cls, int max_size) {
  EnumOptions opt;
  opt.max_size = max_size;
  opt.cls = cls;
  return static_cast<int>(enumerate_algebras(opt).size());
}

}  // namespace

TEST_CASE("lattice construction and rejection") {
  const Lattice c3 = chain(3);
  CHECK(c3.bot == 0);
  CHECK(c3.top == 2);
  CHECK(c3.mt(1, 2) == 1);
  CHECK(c3.jn(0, 1) == 1);
  CHECK(c3.distributive());

  const Lattice dia = diamond();
  CHECK(dia.mt(1, 2) == 0);
  CHECK(dia.jn(1, 2) == 3);
  CHECK(dia.distributive());

  // two incomparable points have no meet
  std::vector<uint8_t> anti = {1, 0, 0, 1};
  CHECK(!Lattice::from_leq(2, anti).has_value());

  // three incomparable atoms under a top and over a bottom: a lattice that
  // is not distributive
  std::vector<uint8_t> m3(25, 0);
  auto set = [&](int i, int j) { m3[static_cast<size_t>(i) * 5 + j] = 1; };
  for (int i = 0; i < 5; ++i) set(i, i);
  for (int i = 1; i <= 3; ++i) {
    set(0, i);
    set(i, 4);
  }
  set(0, 4);
  auto L = Lattice::from_leq(5, m3);
  REQUIRE(L.has_value());
  CHECK(!L->distributive());
}

TEST_CASE("validation of single-type algebras") {
  CHECK(!validate_single(two_element()).has_value());
  CHECK(!validate_single(chain3_alg(0)).has_value());
  CHECK(!validate_single(diamond_alg(true, 1, 0)).has_value());

  SingleAlgebra bad = chain3_alg(0);
  bad.intr = {0, 2, 2};  // would expand the middle element
  auto err = validate_single(bad);
  REQUIRE(err.has_value());
  CHECK(err->find("contracting") != std::string::npos);

  bad = chain3_alg(0);
  bad.neg = {1, 0, 2};  // not order-reversing on a chain
  err = validate_single(bad);
  REQUIRE(err.has_value());

  bad = chain4_alg(0, 1);  // I(b)=a but I(a)=0: not idempotent
  err = validate_single(bad);
  REQUIRE(err.has_value());
  CHECK(err->find("idempotent") != std::string::npos);
}

TEST_CASE("classification matches hand-computed examples") {
  // four-element Boolean algebra whose interior keeps one atom and kills the
  // other: the closure of the kept atom overshoots, so only the base class
  const uint8_t only_base = classify(diamond_alg(true, 1, 0));
  CHECK(has_class(only_base, AlgClass::tqBa));
  CHECK(!has_class(only_base, AlgClass::tqBa5));

  // three-element chain with the trivial interior: everything holds
  const uint8_t all = classify(chain3_alg(0));
  for (int c = 0; c < kAlgClassCount; ++c) CHECK(has_class(all, static_cast<AlgClass>(c)));

  // identity interior on the three-element chain: stable but the middle
  // element has no complement among the opens
  const uint8_t idint = classify(chain3_alg(1));
  CHECK(has_class(idint, AlgClass::tqBa5));
  CHECK(!has_class(idint, AlgClass::IA1));
  CHECK(has_class(idint, AlgClass::IA2));
  CHECK(has_class(idint, AlgClass::IA3));
  CHECK(!has_class(idint, AlgClass::pra));

  // diamond with the fixing negation and the interior killing both atoms:
  // opens are complemented, yet the interior does not distribute over join
  const uint8_t ia1_only = classify(diamond_alg(false, 0, 0));
  CHECK(has_class(ia1_only, AlgClass::IA1));
  CHECK(!has_class(ia1_only, AlgClass::IA2));
  CHECK(!has_class(ia1_only, AlgClass::IA3));

  // diamond with the fixing negation keeping one atom: joint order-reflection
  // holds while complementation and join-preservation fail
  const uint8_t ia3_only = classify(diamond_alg(false, 1, 0));
  CHECK(has_class(ia3_only, AlgClass::tqBa5));
  CHECK(!has_class(ia3_only, AlgClass::IA1));
  CHECK(!has_class(ia3_only, AlgClass::IA2));
  CHECK(has_class(ia3_only, AlgClass::IA3));

  // four-element chain with interior collapsing the middle elements:
  // joint order-reflection fails
  const uint8_t not_ia3 = classify(chain4_alg(0, 0));
  CHECK(has_class(not_ia3, AlgClass::IA1));
  CHECK(has_class(not_ia3, AlgClass::IA2));
  CHECK(!has_class(not_ia3, AlgClass::IA3));
}

TEST_CASE("enumeration counts for small carriers") {
  CHECK(count_of(AlgClass::tqBa, 2) == 1);
  CHECK(count_of(AlgClass::pra, 2) == 1);

  CHECK(count_of(AlgClass::tqBa, 3) == 3);
  CHECK(count_of(AlgClass::tqBa5, 3) == 3);
  CHECK(count_of(AlgClass::IA1, 3) == 2);
  CHECK(count_of(AlgClass::IA2, 3) == 3);
  CHECK(count_of(AlgClass::IA3, 3) == 3);
  CHECK(count_of(AlgClass::pra, 3) == 2);

  CHECK(count_of(AlgClass::tqBa, 4) == 13);
  CHECK(count_of(AlgClass::tqBa5, 4) == 10);
  CHECK(count_of(AlgClass::IA1, 4) == 6);
  CHECK(count_of(AlgClass::IA2, 4) == 7);
  CHECK(count_of(AlgClass::IA3, 4) == 7);
  CHECK(count_of(AlgClass::pra, 4) == 3);
}

TEST_CASE("enumerated algebras are valid, distinct, and deterministic") {
  EnumOptions opt;
  opt.max_size = 4;
  opt.cls = AlgClass::tqBa;
  const auto algs = enumerate_algebras(opt);
  REQUIRE(algs.size() == 13);

  for (const auto& a : algs) CHECK(!validate_single(a).has_value());
  for (size_t i = 0; i < algs.size(); ++i)
    for (size_t j = i + 1; j < algs.size(); ++j) CHECK(!is_isomorphic(algs[i], algs[j]));

  EnumOptions serial = opt;
  serial.jobs = 1;
  const auto algs_serial = enumerate_algebras(serial);
  REQUIRE(algs_serial.size() == algs.size());
  for (size_t i = 0; i < algs.size(); ++i)
    CHECK(render_alg(algs_serial[i]) == render_alg(algs[i]));
}

TEST_CASE("kernels are sublattices and the derived structure is lawful") {
  EnumOptions opt;
  opt.max_size = 4;
  opt.cls = AlgClass::tqBa;
  for (const auto& a : enumerate_algebras(opt)) {
    // joins of opens are open, meets of closeds are closed
    for (int x = 0; x < a.lat.n; ++x)
      for (int y = 0; y < a.lat.n; ++y) {
        const int u = a.lat.jn(a.intr[x], a.intr[y]);
        CHECK(a.intr[u] == u);
        const int v = a.lat.mt(a.clos(x), a.clos(y));
        CHECK(a.clos(v) == v);
      }
    const HetAlgebra h = to_heterogeneous(a);
    const auto err = validate_het(h);
    if (err) FAIL_CHECK(*err);
    CHECK(classify_het(h) == classify(a));
  }
}

TEST_CASE("round trips between the two presentations") {
  EnumOptions opt;
  opt.max_size = 4;
  opt.cls = AlgClass::tqBa;
  for (const auto& a : enumerate_algebras(opt)) {
    const SingleAlgebra back = to_single(to_heterogeneous(a));
    CHECK(back.lat.leq == a.lat.leq);
    CHECK(back.neg == a.neg);
    CHECK(back.intr == a.intr);
  }

  // relabeled copies are isomorphic in both presentations
  const SingleAlgebra a = diamond_alg(false, 1, 0);
  const SingleAlgebra b = relabel(a, {2, 3, 0, 1});
  CHECK(is_isomorphic(a, b));
  CHECK(canonical_key(a) == canonical_key(b));
  CHECK(is_isomorphic_het(to_heterogeneous(a), to_heterogeneous(b)));
  const SingleAlgebra c = diamond_alg(false, 0, 0);
  CHECK(!is_isomorphic(a, c));
  CHECK(canonical_key(a) != canonical_key(c));
  CHECK(!is_isomorphic_het(to_heterogeneous(a), to_heterogeneous(c)));
}

TEST_CASE("stable algebras have one kernel with a De Morgan negation") {
  EnumOptions opt;
  opt.max_size = 4;
  opt.cls = AlgClass::tqBa5;
  const auto algs = enumerate_algebras(opt);
  REQUIRE(algs.size() == 10);
  for (const auto& a : algs) {
    const HetAlgebra h = to_heterogeneous(a);
    REQUIRE(h.has_kernel_neg);
    CHECK(h.LI.leq == h.LC.leq);
    CHECK(h.eI == h.eC);
    CHECK(h.simI == h.minusC);
    // the canonical comparison map α ↦ γ(eI(α)) is an isomorphism of the
    // two kernel lattices commuting with the kernel negations
    std::vector<int> f(h.LI.n);
    std::set<int> image;
    for (int al = 0; al < h.LI.n; ++al) {
      f[al] = h.gamma[h.eI[al]];
      image.insert(f[al]);
    }
    CHECK(static_cast<int>(image.size()) == h.LC.n);
    for (int al = 0; al < h.LI.n; ++al) {
      CHECK(f[h.simI[al]] == h.minusC[f[al]]);
      for (int be = 0; be < h.LI.n; ++be) {
        CHECK(f[h.LI.mt(al, be)] == h.LC.mt(f[al], f[be]));
        CHECK(f[h.LI.jn(al, be)] == h.LC.jn(f[al], f[be]));
      }
    }
  }

  // complemented kernels exactly for the IA1 members
  for (const auto& a : algs) {
    const HetAlgebra h = to_heterogeneous(a);
    bool boolean = true;
    for (int al = 0; al < h.LI.n; ++al)
      if (h.LI.jn(al, h.simI[al]) != h.LI.top || h.LI.mt(al, h.simI[al]) != h.LI.bot)
        boolean = false;
    CHECK(boolean == has_class(classify(a), AlgClass::IA1));
  }
}

TEST_CASE("complemented kernels do not force join-preserving interiors") {
  // a complemented-kernel algebra in which ι(x ∨ y) differs from ιx ∪ ιy:
  // the diamond with both atoms interior-trivial
  const SingleAlgebra a = diamond_alg(false, 0, 0);
  const uint8_t mask = classify(a);
  REQUIRE(has_class(mask, AlgClass::IA1));
  CHECK(!has_class(mask, AlgClass::IA2));

  const HetAlgebra h = to_heterogeneous(a);
  const int lhs = h.iota[a.lat.jn(1, 2)];
  const int rhs = h.LI.jn(h.iota[1], h.iota[2]);
  CHECK(lhs != rhs);

  // and the enumeration confirms the gap at the smallest possible size
  EnumOptions opt;
  opt.max_size = 4;
  opt.cls = AlgClass::IA1;
  int gap = 0;
  for (const auto& b : enumerate_algebras(opt))
    if (!has_class(classify(b), AlgClass::IA2)) ++gap;
  CHECK(gap == 2);
}

TEST_CASE("evaluation of formulas and structures") {
  const SingleAlgebra a = chain3_alg(0);  // 0 < 1 < 2, interior kills the middle
  const HetAlgebra h = to_heterogeneous(a);
  REQUIRE(h.LI.n == 2);  // opens are 0 and 2

  const Env env = {{"p", 1}, {"q", 0}};
  CHECK(eval_term(h, pt("(boxI p)"), env) == 0);
  CHECK(eval_term(h, pt("(diamI p)"), env) == 1);
  CHECK(eval_term(h, pt("(circI (boxI p))"), env) == 0);
  CHECK(eval_term(h, pt("(circC (diamC p))"), env) == 2);
  CHECK(eval_term(h, pt("(neg p)"), env) == 1);
  CHECK(eval_term(h, pt("(s-arrow p q)"), env) == 0);
  CHECK(eval_term(h, pt("(s-arrow p p)"), env) == 2);
  CHECK(eval_term(h, pt("(s-excl p q)"), env) == 0);
  CHECK(eval_term(h, pt("(and p (or q top))"), env) == 1);
  // structural connectives agree with their operational counterparts
  CHECK(eval_term(h, pt("(s-wedge p q)"), env) == eval_term(h, pt("(and p q)"), env));
  CHECK(eval_term(h, pt("(s-neg p)"), env) == eval_term(h, pt("(neg p)"), env));
  CHECK(eval_term(h, pt("(s-boxI p)"), env) == eval_term(h, pt("(boxI p)"), env));
  CHECK(eval_term(h, pt("(s-diamC p)"), env) == eval_term(h, pt("(diamC p)"), env));

  CHECK(seq_valid(h, ps("(seq (circI (boxI p)) p)")));
  CHECK(seq_valid(h, ps("(seq p (circC (diamC p)))")));
  const auto falsify = find_falsifying(h, ps("(seq p (circI (boxI p)))"));
  REQUIRE(falsify.has_value());
  REQUIRE(falsify->size() == 1);
  CHECK((*falsify)[0].second == 1);

  CHECK_THROWS_AS(eval_term(h, pt("(and p r)"), env), std::runtime_error);
}

TEST_CASE("rule soundness checking") {
  const HetAlgebra pra3 = to_heterogeneous(chain3_alg(0));
  for (const Rule* r : rule_set(CalculusId::PRA)) {
    REQUIRE(rule_applicable(*r, pra3));
    const auto err = check_rule_soundness(*r, pra3);
    if (err) FAIL_CHECK(*err);
  }

  // a deliberately wrong rule is caught
  ParseOptions po;
  po.allow_metavars = true;
  Rule flip;
  flip.name = "flip";
  flip.kind = RuleKind::Structural;
  flip.bidirectional = false;
  flip.calculi = 0x3f;
  flip.premises = {parse_sequent("(seq X Y)", po)};
  flip.conclusion = parse_sequent("(seq Y X)", po);
  const auto err = check_rule_soundness(flip, pra3);
  REQUIRE(err.has_value());
  CHECK(err->find("flip") != std::string::npos);

  // kernel-negation rules are inapplicable without a kernel negation
  const HetAlgebra base_only = to_heterogeneous(diamond_alg(true, 1, 0));
  REQUIRE(!base_only.has_kernel_neg);
  bool saw_inapplicable = false;
  for (const Rule* r : rule_set(CalculusId::TQBA5))
    if (!rule_applicable(*r, base_only)) saw_inapplicable = true;
  CHECK(saw_inapplicable);
}

TEST_CASE("soundness sweep over small models") {
  const SweepResult res = soundness_sweep(CalculusId::TQBA, 3, 0);
  CHECK(res.algebras == 3);
  CHECK(res.checks > 0);
  CHECK(res.violations.empty());

  const SweepResult res5 = soundness_sweep(CalculusId::PRA, 3, 1);
  CHECK(res5.algebras == 2);
  CHECK(res5.violations.empty());
}

TEST_CASE("countermodel search") {
  const auto cm = countermodel(ps("(seq p q)"), AlgClass::pra, 2);
  REQUIRE(cm.has_value());
  CHECK(cm->algebra.lat.n == 2);
  REQUIRE(cm->atoms.size() == 2);
  CHECK(cm->atoms[0].first == "p");
  CHECK(cm->atoms[0].second == 1);
  CHECK(cm->atoms[1].second == 0);

  CHECK(!countermodel(ps("(seq (and p q) p)"), AlgClass::pra, 3).has_value());

  // interiors preserve joins in one subclass but not in the other
  const Sequent dist = ps(
      "(seq (circI (boxI (or p q))) (or (circI (boxI p)) (circI (boxI q))))");
  CHECK(!countermodel(dist, AlgClass::IA2, 4).has_value());
  const auto gap = countermodel(dist, AlgClass::IA1, 4);
  REQUIRE(gap.has_value());
  CHECK(gap->algebra.lat.n == 4);
}

TEST_CASE("algebra serialization") {
  const SingleAlgebra a = diamond_alg(false, 1, 0);
  const std::string text = render_alg(a);
  const SingleAlgebra back = parse_alg(text);
  CHECK(back.lat.leq == a.lat.leq);
  CHECK(back.neg == a.neg);
  CHECK(back.intr == a.intr);
  CHECK(render_alg(back) == text);

  CHECK_THROWS_AS(parse_alg("alg v2\n"), std::runtime_error);
  CHECK_THROWS_AS(parse_alg("alg v1\nn 0\n"), std::runtime_error);
  CHECK_THROWS_AS(parse_alg("alg v1\nn 2\nleq 12 01\nneg 1 0\nint 0 1\n"),
                  std::runtime_error);
  CHECK_THROWS_AS(parse_alg("alg v1\nn 2\nleq 10 01\nneg 1 0\nint 0 1\n"),
                  std::runtime_error);  // incomparable pair: not a lattice
  CHECK_THROWS_AS(parse_alg("alg v1\nn 2\nleq 11 01\nneg 2 0\nint 0 1\n"),
                  std::runtime_error);
}

TEST_CASE("enumeration cache round trip") {
  namespace fs = std::filesystem;
  const fs::path dirp = fs::temp_directory_path() / "rp_alg_cache_test";
  fs::remove_all(dirp);
  fs::create_directories(dirp);
  const std::string dir = dirp.string();
  setenv("ROUGHPROOF_CACHE", dir.c_str(), 1);

  EnumOptions opt;
  opt.max_size = 3;
  opt.cls = AlgClass::IA1;
  const auto first = enumerate_algebras_cached(opt);
  const auto direct = enumerate_algebras(opt);
  REQUIRE(first.size() == direct.size());
  for (size_t i = 0; i < first.size(); ++i)
    CHECK(render_alg(first[i]) == render_alg(direct[i]));

  std::ifstream check_file(dir + "/enum_ia1_3.v1.algs");
  CHECK(check_file.good());

  // a corrupt cache entry for a fresh key is ignored and recomputed
  {
    std::ofstream corrupt(dir + "/enum_ia2_3.v1.algs");
    corrupt << "algcache v1\ncount 99\n\ngarbage\n";
  }
  EnumOptions opt2;
  opt2.max_size = 3;
  opt2.cls = AlgClass::IA2;
  const auto recovered = enumerate_algebras_cached(opt2);
  CHECK(recovered.size() == enumerate_algebras(opt2).size());

  unsetenv("ROUGHPROOF_CACHE");
  fs::remove_all(dirp);
}

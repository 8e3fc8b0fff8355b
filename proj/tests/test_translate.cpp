#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>

#include "doctest.h"
#include "roughproof/parser.hpp"
#include "roughproof/translate.hpp"

using namespace rp;

namespace {

// systematic family of small single-type formulas over two atoms
std::vector<LTermPtr> small_formulas(int depth) {
  std::vector<LTermPtr> cur = {latom("p"), latom("q"), lmk(LOp::Top), lmk(LOp::Bot)};
  std::vector<LTermPtr> all = cur;
  for (int d = 0; d < depth; ++d) {
    std::vector<LTermPtr> next;
    for (const auto& t : cur) {
      next.push_back(lmk(LOp::Neg, {t}));
      next.push_back(lmk(LOp::I, {t}));
      next.push_back(lmk(LOp::C, {t}));
      next.push_back(lmk(LOp::And, {t, latom("p")}));
      next.push_back(lmk(LOp::Or, {t, latom("q")}));
    }
    all.insert(all.end(), next.begin(), next.end());
    cur = std::move(next);
  }
  return all;
}

}  // namespace

TEST_CASE("single-type parsing round trips") {
  for (const std::string s :
       {"p", "top", "bot", "(I p)", "(C (I p))", "(neg (or p q))",
        "(and (I p) (C (neg q)))", "(or (and p q) (I (I r)))"}) {
    const LTermPtr t = parse_lterm(s);
    CHECK(render_lterm(t) == s);
    CHECK(lterm_eq(t, parse_lterm(render_lterm(t))));
  }

  CHECK_THROWS_AS(parse_lterm("(I p q)"), AritySmash);
  CHECK_THROWS_AS(parse_lterm("(and p)"), AritySmash);
  CHECK_THROWS_AS(parse_lterm("(box p)"), SyntaxError);
  CHECK_THROWS_AS(parse_lterm("(I p"), SyntaxError);
  CHECK_THROWS_AS(parse_lterm("P"), SyntaxError);
  CHECK_THROWS_AS(parse_lterm("p q"), SyntaxError);
  CHECK_THROWS_AS(parse_lterm(""), SyntaxError);
}

TEST_CASE("translation shapes") {
  CHECK(render(t_translate(parse_lterm("(I p)"))) == "(circI (boxI p))");
  CHECK(render(t_translate(parse_lterm("(C p)"))) == "(circC (diamC p))");
  CHECK(render(t_translate(parse_lterm("(C (I p))"))) ==
        "(circC (diamC (circI (boxI p))))");
  CHECK(render(t_translate(parse_lterm("(neg (and p (or top bot)))"))) ==
        "(neg (and p (or top bot)))");
  CHECK(render(t_translate(parse_lterm("(I (and p (C q)))"))) ==
        "(circI (boxI (and p (circC (diamC q)))))");

  // images are well-sorted base-type formulas
  for (const auto& t : small_formulas(2)) {
    const TermPtr img = t_translate(t);
    CHECK(sort_of(img) == Sort::D);
    CHECK(is_formula(img));
  }
}

TEST_CASE("translation is injective") {
  const auto family = small_formulas(2);
  std::set<std::string> sources, images;
  for (const auto& t : family) {
    sources.insert(render_lterm(t));
    images.insert(render(t_translate(t)));
  }
  CHECK(sources.size() == images.size());
}

TEST_CASE("translation preserves evaluation") {
  EnumOptions opt;
  opt.max_size = 4;
  opt.cls = AlgClass::tqBa;
  const auto algebras = enumerate_algebras(opt);
  REQUIRE(algebras.size() == 13);
  const auto family = small_formulas(2);

  for (const auto& a : algebras) {
    const HetAlgebra h = to_heterogeneous(a);
    for (const auto& t : family) {
      const TermPtr img = t_translate(t);
      for (int vp = 0; vp < a.lat.n; ++vp)
        for (int vq = 0; vq < a.lat.n; ++vq) {
          const Env env = {{"p", vp}, {"q", vq}, {"r", 0}};
          CHECK(eval_lterm(a, t, env) == eval_term(h, img, env));
        }
    }
  }
}

TEST_CASE("regression targets are well-formed and semantically tight") {
  const auto& targets = regression_targets();
  REQUIRE(targets.size() == 10);

  std::set<std::string> names;
  for (const auto& t : targets) {
    CHECK(names.insert(t.name).second);
    CHECK(term_eq(t.sequent.lhs, t_translate(t.lhs)));
    CHECK(term_eq(t.sequent.rhs, t_translate(t.rhs)));
    // valid on every model of the target's own class
    const AlgClass cls = static_cast<AlgClass>(t.calculus);
    CHECK(!countermodel(t.sequent, cls, 5).has_value());
  }

  auto find = [&](const std::string& name) {
    for (const auto& t : targets)
      if (t.name == name) return t;
    FAIL("missing target");
    return targets[0];
  };

  // each strengthening is needed: the targets fail one class down
  CHECK(countermodel(find("interior-stable").sequent, AlgClass::tqBa, 4).has_value());
  CHECK(countermodel(find("interior-join-out").sequent, AlgClass::IA1, 4).has_value());
  CHECK(countermodel(find("interior-complement").sequent, AlgClass::tqBa5, 4).has_value());
  CHECK(countermodel(find("joint-reflection").sequent, AlgClass::IA2, 4).has_value());

  // the base-class targets hold everywhere already
  CHECK(!countermodel(find("interior-below").sequent, AlgClass::tqBa, 4).has_value());
  CHECK(!countermodel(find("interior-meet-in").sequent, AlgClass::tqBa, 4).has_value());
}

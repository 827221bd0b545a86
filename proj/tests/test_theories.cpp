#include <doctest.h>

#include "strata/json_io.hpp"
#include "strata/reduction.hpp"
#include "strata/theories.hpp"
#include "support.hpp"

using namespace strata;
using testing_support::P;

namespace {

const Term kExpanded = P(R"((x x)[x\\x.x x])");
const Term kEtaId = P(R"(\x.\y.x y)");

bool contradicts(VerdictKind smaller, VerdictKind bigger) {
  return smaller == VerdictKind::Equal && bigger == VerdictKind::NotEqual;
}

}  // namespace

TEST_SUITE("theories") {
  TEST_CASE("theory names") {
    for (Theory t : {Theory::Lambda, Theory::H, Theory::HStar}) CHECK(parse_theory(to_string(t)) == t);
    CHECK_THROWS_AS(parse_theory("b"), std::invalid_argument);
    CHECK(to_string(VerdictKind::NotEqual) == "not-equal");
  }

  TEST_CASE("judge examples") {
    Oracle v(Calculus::CbV);
    auto a = judge(Theory::Lambda, terms::omega(), kExpanded, v);
    CHECK(a.kind == VerdictKind::Equal);
    CHECK(a.rule == 'a');
    CHECK(alpha_eq(a.left_steps.empty() ? a.left : a.left_steps.back().after,
                   a.right_steps.empty() ? a.right : a.right_steps.back().after));

    auto b = judge(Theory::H, terms::omega(), P(R"(x ((\x.x x)(\x.x x)))"), v);
    CHECK(b.kind == VerdictKind::Equal);
    CHECK(b.rule == 'b');
    CHECK(judge(Theory::Lambda, terms::omega(), P(R"(x ((\x.x x)(\x.x x)))"), v).kind == VerdictKind::Unknown);

    auto c = judge(Theory::H, terms::id(), kEtaId, v);
    CHECK(c.kind == VerdictKind::NotEqual);
    CHECK(c.rule == 'c');
    CHECK(judge(Theory::Lambda, terms::id(), kEtaId, v).kind == VerdictKind::NotEqual);
    auto cs = judge(Theory::HStar, terms::id(), kEtaId, v);
    CHECK(cs.kind == VerdictKind::Unknown);
    CHECK_FALSE(cs.falsification);
    CHECK(cs.contexts_tried == enumerate_contexts(2).size());

    auto d = judge(Theory::HStar, terms::id(), terms::omega(), v);
    CHECK(d.kind == VerdictKind::NotEqual);
    CHECK(d.rule == 'd');
    CHECK(judge(Theory::H, terms::id(), terms::omega(), v).kind == VerdictKind::NotEqual);
    CHECK(judge(Theory::Lambda, terms::id(), terms::omega(), v).kind == VerdictKind::Unknown);

    CHECK_THROWS_AS(judge(Theory::H, P("x bot"), P("x"), v), std::invalid_argument);
  }

  TEST_CASE("the same judgments in CbN") {
    Oracle n(Calculus::CbN);
    CHECK(judge(Theory::Lambda, terms::omega(), kExpanded, n).kind == VerdictKind::Equal);
    CHECK(judge(Theory::H, terms::id(), kEtaId, n).kind == VerdictKind::NotEqual);
    CHECK(judge(Theory::HStar, terms::id(), terms::omega(), n).kind == VerdictKind::NotEqual);
    // x Ω is CbN-meaningful: a head variable ignores its argument at level 0.
    CHECK(judge(Theory::H, terms::omega(), P(R"(x ((\x.x x)(\x.x x)))"), n).kind == VerdictKind::NotEqual);
  }

  TEST_CASE("context enumeration") {
    auto c0 = enumerate_contexts(0);
    REQUIRE(c0.size() == 1);
    CHECK(c0[0].str() == Context::empty().str());
    auto c1 = enumerate_contexts(1);
    CHECK(c1.size() == 1 + 6 * context_pool().size() + 2);
    for (const auto& c : enumerate_contexts(2)) CHECK_NOTHROW(c.plug(P("z")));
  }

  TEST_CASE("falsifier examples") {
    Oracle v(Calculus::CbV);
    auto f = falsify_observational(P(R"(\x.x ((\x.x x)(\x.x x)))"), P(R"(\x.x (\x.x))"), v, 2);
    REQUIRE(f);
    CHECK(f->left != f->right);
    CHECK(v.classify(f->context.plug(P(R"(\x.x ((\x.x x)(\x.x x)))"))) == f->left);
    CHECK(v.classify(f->context.plug(P(R"(\x.x (\x.x))"))) == f->right);

    std::size_t tried = 99;
    CHECK_FALSE(falsify_observational(terms::id(), terms::id(), v, 2, &tried));
    CHECK(tried == 0);

    auto e = falsify_observational(terms::id(), terms::omega(), v, 2, &tried);
    REQUIRE(e);
    CHECK(e->context.str() == Context::empty().str());
    CHECK(tried == 1);
  }

  TEST_CASE("verdict certificates verify") {
    Oracle v(Calculus::CbV);
    auto a = judge(Theory::Lambda, terms::omega(), kExpanded, v);
    CHECK(verify_verdict(a));
    auto forged = a;
    forged.right = terms::id();
    CHECK_FALSE(verify_verdict(forged));

    auto d = judge(Theory::HStar, terms::id(), terms::omega(), v);
    CHECK(verify_verdict(d));
    auto c = judge(Theory::H, terms::id(), kEtaId, v);
    CHECK(verify_verdict(c));
    auto bad = c;
    bad.right = terms::id();
    CHECK_FALSE(verify_verdict(bad));

    json j = to_json(c);
    CHECK(j.at("verdict") == "not-equal");
    CHECK(j.at("rule") == "c");
    CHECK(j.at("left_steps").is_array());
  }

  TEST_CASE("property: verdicts verify and never contradict across theories") {
    auto ts = testing_support::random_corpus(82, 120, 8);
    std::size_t decided = 0;
    for (Calculus c : {Calculus::CbV, Calculus::CbN}) {
      Oracle o(c, 2000);
      for (std::size_t i = 0; i < ts.size(); ++i) {
        // Alternate between unrelated pairs and pairs related by a step.
        Term t = ts[i], u = ts[(i * 7 + 3) % ts.size()];
        if (i % 2 == 0)
          if (auto s = reduce_once(t, c, Level::omega())) u = s->after;
        JudgeBudgets b{1};
        auto l = judge(Theory::Lambda, t, u, o, b);
        auto h = judge(Theory::H, t, u, o, b);
        auto hs = judge(Theory::HStar, t, u, o, b);
        CAPTURE(print(t));
        CAPTURE(print(u));
        for (const auto* v : {&l, &h, &hs}) {
          CHECK(verify_verdict(*v, 2000));
          if (v->kind != VerdictKind::Unknown) ++decided;
        }
        CHECK_FALSE(contradicts(l.kind, h.kind));
        CHECK_FALSE(contradicts(l.kind, hs.kind));
        CHECK_FALSE(contradicts(h.kind, hs.kind));
        if (l.kind == VerdictKind::Equal) {
          CHECK(h.kind == VerdictKind::Equal);
          CHECK(hs.kind == VerdictKind::Equal);
        }
        if (hs.kind == VerdictKind::NotEqual && !hs.falsification) CHECK(h.kind == VerdictKind::NotEqual);
      }
    }
    CHECK(decided > 300);
  }
}

#include <doctest.h>

#include "strata/normal_forms.hpp"
#include "strata/reduction.hpp"
#include "strata/sweep.hpp"
#include "support.hpp"

using namespace strata;
using testing_support::P;

namespace {
const std::vector<Level> kLevels{Level::fin(0), Level::fin(1), Level::fin(2), Level::fin(3), Level::omega()};
}

TEST_SUITE("normal_forms") {
  TEST_CASE("classify_nf examples") {
    Term t0 = P(R"(\x.x (\y.(\x.x)(\x.x)) (\z.(\x.x)((\x.x x)(\x.x x))))");
    CHECK(classify_nf(t0, Calculus::CbV, Level::fin(1)) == NfClass::No);
    CHECK(classify_nf(t0, Calculus::CbV, Level::fin(2)) == NfClass::NotNf);
    CHECK_FALSE(find_redexes(t0, Calculus::CbV, Level::fin(2)).empty());
    for (Level k : kLevels) {
      CHECK(classify_nf(P("x"), Calculus::CbV, k) == NfClass::Vr);
      CHECK(classify_nf(P("x"), Calculus::CbN, k) == NfClass::Ne);
    }
    CHECK(classify_nf(P("x y"), Calculus::CbV, Level::fin(0)) == NfClass::Ne);
    // Vr is the variable-rooted production; abstractions are plain normal forms.
    CHECK(classify_nf(P(R"(\x.x)"), Calculus::CbV, Level::fin(0)) == NfClass::No);
    CHECK(classify_nf(P(R"(\x.x)"), Calculus::CbN, Level::fin(0)) == NfClass::No);
    CHECK(classify_nf(P(R"((x y)[y\z w])"), Calculus::CbV, Level::fin(0)) == NfClass::Ne);
    CHECK(classify_nf(P(R"((x y)[y\z w])"), Calculus::CbN, Level::fin(0)) == NfClass::NotNf);
    CHECK_THROWS_AS(classify_nf(P("x bot"), Calculus::CbV, Level::fin(0)), std::invalid_argument);
  }

  TEST_CASE("is_bno examples") {
    CHECK(is_bno(P(R"(\x.x (\y.(\x.x)(\x.x)) (\z.bot))"), Calculus::CbV, Level::fin(1)));
    CHECK_FALSE(is_bno(P(R"(\x.x (\y.(\x.x)(\x.x)) (\z.bot))"), Calculus::CbV, Level::fin(2)));
    for (Calculus c : {Calculus::CbV, Calculus::CbN}) CHECK_FALSE(is_bno(Term::bot(), c, Level::fin(0)));
    CHECK(is_bno(P(R"(\y.bot (\z.bot))"), Calculus::CbV, Level::fin(0)));
    CHECK_FALSE(is_bno(P(R"(\y.bot (\z.bot))"), Calculus::CbV, Level::fin(1)));
    CHECK(is_bno(P("x bot"), Calculus::CbN, Level::fin(0)));
    CHECK_FALSE(is_bno(P("x bot"), Calculus::CbV, Level::fin(0)));
  }

  TEST_CASE("strat_eq examples") {
    Term v0 = P(R"((\x.x (\y.x)) z)"), v1 = P(R"((\x.x (\z.z)) z)");
    CHECK(strat_eq(v0, v1, Calculus::CbV, Level::fin(0)));
    CHECK(strat_eq(v0, v1, Calculus::CbV, Level::fin(1)));
    CHECK_FALSE(strat_eq(v0, v1, Calculus::CbV, Level::fin(2)));

    Term n0 = P(R"((x (\x.x))[x\y ((\x.x x)(\x.x x))])"), n1 = P(R"((x (\x.x))[x\y (\x.x)])");
    CHECK(strat_eq(n0, n1, Calculus::CbN, Level::fin(0)));
    CHECK(strat_eq(n0, n1, Calculus::CbN, Level::fin(1)));
    CHECK_FALSE(strat_eq(n0, n1, Calculus::CbN, Level::fin(2)));

    // ≡_0 on abstractions has no premise.
    CHECK(strat_eq(P(R"(\x.x)"), P(R"(\y.z z)"), Calculus::CbV, Level::fin(0)));
    CHECK_FALSE(strat_eq(P(R"(\x.x)"), P(R"(\y.z z)"), Calculus::CbN, Level::fin(0)));
    CHECK(strat_eq(Term::bot(), Term::bot(), Calculus::CbV, Level::fin(3)));
    CHECK_FALSE(strat_eq(Term::bot(), P("x"), Calculus::CbV, Level::fin(0)));
  }

  TEST_CASE("property: grammar/irreducibility agreement (exhaustive size <= 6, random with ES)") {
    auto all = enumerate_terms(6, {"x", "y"});
    auto rnd = testing_support::random_corpus(31, 2000, 14);
    all.insert(all.end(), rnd.begin(), rnd.end());
    for (Calculus c : {Calculus::CbV, Calculus::CbN}) {
      auto r = serial::grammar_agreement(all, c, kLevels);
      CHECK(r.checked == all.size() * kLevels.size());
      for (const auto& d : r.discrepancies) {
        CAPTURE(print(d.term));
        CAPTURE(d.level.str());
        FAIL_CHECK("grammar and redex search disagree");
      }
    }
  }

  TEST_CASE("property: downward normality") {
    for (const auto& t : testing_support::random_corpus(32, 2000, 14))
      for (Calculus c : {Calculus::CbV, Calculus::CbN})
        for (unsigned i = 0; i < 4; ++i)
          if (classify_nf(t, c, Level::fin(i + 1)) != NfClass::NotNf) CHECK(classify_nf(t, c, Level::fin(i)) != NfClass::NotNf);
  }

  TEST_CASE("property: grammar inclusions") {
    for (const auto& t : testing_support::random_corpus(33, 1000, 12))
      for (Calculus c : {Calculus::CbV, Calculus::CbN})
        for (Level k : kLevels) {
          NfClass cls = classify_nf(t, c, k);
          if (c == Calculus::CbN) CHECK(cls != NfClass::Vr);
          if (cls == NfClass::Vr) CHECK(is_value(strip_list(t)));
        }
  }

  TEST_CASE("property: strat_eq is an equivalence, antitone in k, and alpha at omega") {
    std::mt19937_64 rng(34);
    auto ts = testing_support::random_corpus(35, 600, 10);
    for (std::size_t i = 0; i + 2 < ts.size(); i += 3) {
      // Pairs sharing structure make the relation non-trivial.
      Term a = ts[i];
      Term b = testing_support::random_coarsening(a, rng, 0.1);
      b = random_refinement(b, rng);
      Term d = parse(print(a));
      for (Calculus c : {Calculus::CbV, Calculus::CbN}) {
        for (unsigned k = 0; k < 4; ++k) {
          Level lk = Level::fin(k);
          CHECK(strat_eq(a, a, c, lk));
          CHECK(strat_eq(a, d, c, lk));
          CHECK(strat_eq(a, b, c, lk) == strat_eq(b, a, c, lk));
          if (strat_eq(a, b, c, lk) && strat_eq(b, d, c, lk)) CHECK(strat_eq(a, d, c, lk));
          if (strat_eq(a, b, c, Level::fin(k + 1))) CHECK(strat_eq(a, b, c, lk));
        }
        CHECK(strat_eq(a, b, c, Level::omega()) == alpha_eq(a, b));
        CHECK(strat_eq(a, ts[i + 1], c, Level::omega()) == alpha_eq(a, ts[i + 1]));
      }
    }
  }

  TEST_CASE("property: stability of meaningful observables") {
    std::mt19937_64 rng(36);
    std::size_t hits = 0;
    for (const auto& t : testing_support::random_corpus(37, 1500, 12)) {
      Term p = testing_support::random_coarsening(t, rng, 0.15);
      for (Calculus c : {Calculus::CbV, Calculus::CbN})
        for (Level k : kLevels) {
          if (!is_bno(p, c, k)) continue;
          ++hits;
          Term big = random_refinement(p, rng);
          CHECK(is_bno(big, c, k));
          CHECK(strat_eq(p, big, c, k));
        }
    }
    CHECK(hits > 500);
  }
}

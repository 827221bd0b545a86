#include <doctest.h>

#include "strata/json_io.hpp"
#include "strata/sweep.hpp"
#include "strata/theories.hpp"
#include "support.hpp"

using namespace strata;
using testing_support::P;

namespace {

const std::vector<Level> kLevels{Level::fin(0), Level::fin(1), Level::omega()};

std::vector<std::string> keys(const std::vector<GrammarDiscrepancy>& ds) {
  std::vector<std::string> out;
  for (const auto& d : ds) out.push_back(canonical_key(d.term) + "@" + d.level.str());
  return out;
}

json axiom_doc(const AxiomReport& r) { return to_json(r); }

}  // namespace

TEST_SUITE("sweeps") {
  TEST_CASE("grammar agreement: serial and parallel agree") {
    auto ts = testing_support::random_corpus(91, 600, 12);
    for (Calculus c : {Calculus::CbV, Calculus::CbN}) {
      auto s = serial::grammar_agreement(ts, c, kLevels);
      auto p = parallel::grammar_agreement(ts, c, kLevels);
      CHECK(s.checked == p.checked);
      CHECK(keys(s.discrepancies) == keys(p.discrepancies));
    }
  }

  TEST_CASE("diamond: serial and parallel agree") {
    auto ts = testing_support::random_corpus(92, 400, 10);
    for (Calculus c : {Calculus::CbV, Calculus::CbN}) {
      auto s = serial::diamond(ts, c);
      auto p = parallel::diamond(ts, c);
      CHECK(s.peaks == p.peaks);
      CHECK(s.peaks > 0);
      CHECK(s.failures.size() == p.failures.size());
    }
  }

  TEST_CASE("joins_in_one_step examples") {
    Term a = P(R"((\x.x)((\y.y) z))");
    for (Calculus c : {Calculus::CbV, Calculus::CbN}) {
      auto rs = find_redexes(a, c, Level::fin(0));
      for (const auto& r1 : rs)
        for (const auto& r2 : rs) CHECK(joins_in_one_step(apply_step(a, r1), apply_step(a, r2), c));
    }
    CHECK_FALSE(joins_in_one_step(P("x"), P("y"), Calculus::CbV));
  }

  TEST_CASE("axiom campaign: serial and parallel agree") {
    auto ts = testing_support::random_corpus(93, 150, 10);
    for (Calculus c : {Calculus::CbV, Calculus::CbN}) {
      Oracle o(c, 2000);
      CHECK(axiom_doc(serial::axiom_campaign(ts, o, 7)) == axiom_doc(parallel::axiom_campaign(ts, o, 7)));
    }
  }

  TEST_CASE("statuses and first_distinguishing: serial and parallel agree") {
    auto ts = testing_support::random_corpus(94, 500, 10);
    auto ctxs = enumerate_contexts(2);
    for (Calculus c : {Calculus::CbV, Calculus::CbN}) {
      Oracle o(c, 2000);
      CHECK(serial::statuses(ts, o) == parallel::statuses(ts, o));
      for (std::size_t i = 0; i + 1 < 20; ++i)
        CHECK(serial::first_distinguishing(ctxs, ts[i], ts[i + 1], o) ==
              parallel::first_distinguishing(ctxs, ts[i], ts[i + 1], o));
      CHECK(parallel::first_distinguishing(ctxs, terms::id(), terms::omega(), o) == std::optional<std::size_t>{0});
    }
  }
}

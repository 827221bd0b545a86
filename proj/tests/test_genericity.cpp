#include <doctest.h>

#include "strata/genericity.hpp"
#include "strata/json_io.hpp"
#include "strata/theories.hpp"
#include "support.hpp"

using namespace strata;
using testing_support::P;

namespace {

const Context kIdCtx = Context::parse(R"((\y.\x.x)(\z.@))");

std::vector<Term> many_probes() {
  std::vector<Term> ps = default_probes();
  for (const auto& t : testing_support::random_corpus(71, 30, 8)) ps.push_back(t);
  return ps;
}

}  // namespace

TEST_SUITE("genericity") {
  TEST_CASE("surface check examples") {
    Oracle v(Calculus::CbV);
    auto r = surface_genericity_check(kIdCtx, terms::omega(), {P("x"), terms::id(), terms::delta()}, v);
    CHECK(r.hypothesis);
    CHECK(r.ok());
    for (Meaning m : r.probe_status) CHECK(m == Meaning::Meaningful);

    auto head = surface_genericity_check(Context::parse("@ x"), terms::omega(), default_probes(), v);
    CHECK(head.plugged_status == Meaning::Meaningless);
    CHECK_FALSE(head.hypothesis);
    CHECK(head.ok());

    auto bare = surface_genericity_check(Context::empty(), terms::omega(), {terms::id()}, v);
    CHECK(bare.plugged_status == Meaning::Meaningless);
    CHECK_FALSE(bare.hypothesis);
    CHECK(bare.probe_status[0] == Meaning::Meaningful);
    CHECK(bare.ok());

    CHECK_THROWS_AS(surface_genericity_check(kIdCtx, terms::id(), default_probes(), v), PreconditionError);
  }

  TEST_CASE("stratified check: two steps to the identity for every probe") {
    for (Calculus c : {Calculus::CbV, Calculus::CbN}) {
      Oracle o(c);
      auto r = stratified_genericity_check(kIdCtx, terms::omega(), many_probes(), Level::omega(), o);
      CHECK(r.ok());
      CHECK(r.steps() == 2);
      CHECK(r.lifted.size() == 2);
      REQUIRE(r.normal_form);
      CHECK(alpha_eq(*r.normal_form, terms::id()));
      CHECK(r.skeleton_bno);
      CHECK(r.nf_eq_skeleton);
      for (const auto& p : r.probes) {
        CHECK(p.approximant_below);
        CHECK(p.lifted.size() == 2);
        REQUIRE(p.normal_form);
        CHECK(alpha_eq(*p.normal_form, terms::id()));
        CHECK(p.eq_hole_nf);
      }
    }
  }

  TEST_CASE("stratified check: already surface-normal plugged term") {
    Oracle v(Calculus::CbV);
    auto r = stratified_genericity_check(Context::parse(R"(\x.x @)"), terms::omega(), default_probes(), Level::fin(0), v);
    CHECK(r.ok());
    CHECK(r.steps() == 0);
    for (const auto& p : r.probes) {
      CHECK(p.lifted.empty());
      CHECK(p.eq_hole_nf);
      CHECK(strat_eq(*r.normal_form, *p.normal_form, Calculus::CbV, Level::fin(0)));
    }
  }

  TEST_CASE("stratified check preconditions") {
    Oracle v(Calculus::CbV);
    CHECK_THROWS_AS(stratified_genericity_check(Context::empty(), terms::omega(), default_probes(), Level::omega(), v),
                    PreconditionError);
    CHECK_THROWS_AS(stratified_genericity_check(kIdCtx, P("x"), default_probes(), Level::omega(), v),
                    PreconditionError);
    Oracle poor(Calculus::CbV, 3);
    CHECK_THROWS_AS(
        stratified_genericity_check(kIdCtx, P(R"((\x.x x x)(\x.x x x))"), default_probes(), Level::omega(), poor),
        UndeterminedError);
  }

  TEST_CASE("report documents") {
    Oracle v(Calculus::CbV);
    auto r = stratified_genericity_check(kIdCtx, terms::omega(), default_probes(), Level::omega(), v);
    json j = to_json(r);
    CHECK(j.at("ok") == true);
    CHECK(j.at("i") == 2);
    CHECK(j.at("probes").size() == default_probes().size());
    for (const auto& p : j.at("probes")) CHECK(p.at("step_count") == 2);
  }

  TEST_CASE("axiom instances on fixed terms") {
    Oracle v(Calculus::CbV);
    // Ω: a single root step whose approximation collapses.
    auto om = check_axioms_on(terms::omega(), v, 1);
    CHECK(om.of(Axiom::DynamicApproximation).instances == 1);
    CHECK(om.of(Axiom::DynamicApproximation).passes == 1);
    CHECK(om.ok());

    Term na = P(R"(\x.x (\y.(\x.x)(\x.x)) (\z.(\x.x)((\x.x x)(\x.x x))))");
    auto r = check_axioms_on(na, v, 2);
    CHECK(r.ok());
    CHECK(r.of(Axiom::NormalFormObservability).passes >= 2);  // levels 0 and 1
    CHECK(r.of(Axiom::StableObservables).passes >= 2);
    CHECK(r.of(Axiom::DynamicLift).passes > 0);
  }

  TEST_CASE("certificates replay") {
    Term na = P(R"(\x.x (\y.(\x.x)(\x.x)) (\z.(\x.x)((\x.x x)(\x.x x))))");
    json a3{{"axiom", 3}, {"calculus", "cbv"}, {"term", print_raw(na)}, {"level", "1"}};
    CHECK_FALSE(replay_certificate(a3));

    json a4{{"axiom", 4}, {"calculus", "cbv"}, {"term", print_raw(na)}, {"level", "1"}, {"bigger", print_raw(na)}};
    CHECK_FALSE(replay_certificate(a4));
    a4["bigger"] = "z";
    CHECK(replay_certificate(a4));

    json a2{{"axiom", 2}, {"calculus", "cbv"}, {"term", R"((\x.x) y)"}, {"position", ""}, {"rule", "dB"},
            {"list_length", 0}, {"bigger", R"((\x.x) y)"}};
    CHECK_FALSE(replay_certificate(a2));
    a2["bigger"] = "z";
    CHECK(replay_certificate(a2));
  }

  TEST_CASE("property: the pipeline succeeds on enumerated contexts") {
    auto ctxs = enumerate_contexts(2);
    const std::vector<Term> holes{terms::omega(), P(R"(x ((\x.x x)(\x.x x)))")};
    std::size_t runs = 0;
    for (Calculus c : {Calculus::CbV, Calculus::CbN}) {
      Oracle o(c, 2000);
      for (std::size_t i = 0; i < ctxs.size(); i += 5)
        for (const Term& t : holes) {
          if (o.classify(t) != Meaning::Meaningless) continue;
          auto s = surface_genericity_check(ctxs[i], t, default_probes(), o);
          CHECK(s.ok());
          for (Level k : {Level::fin(0), Level::fin(1), Level::omega()}) {
            try {
              auto r = stratified_genericity_check(ctxs[i], t, default_probes(), k, o);
              CAPTURE(ctxs[i].str());
              CAPTURE(k.str());
              CHECK(r.ok());
              for (const auto& p : r.probes) CHECK(p.lifted.size() == r.steps());
              ++runs;
            } catch (const PreconditionError&) {
            } catch (const UndeterminedError&) {
            }
          }
        }
    }
    CHECK(runs > 500);
  }

  TEST_CASE("property: random axiom campaign has no violations") {
    for (Calculus c : {Calculus::CbV, Calculus::CbN}) {
      auto rep = axiom_suite(c, testing_support::random_corpus(72, 400, 10), 2000, 3);
      for (int a = 1; a <= 4; ++a) {
        const auto& t = rep.of(static_cast<Axiom>(a));
        CHECK(t.instances > 0);
        for (const auto& f : t.failures) {
          CAPTURE(f.certificate.dump());
          FAIL_CHECK(f.message);
          CHECK(replay_certificate(f.certificate, 2000));
        }
      }
    }
  }
}

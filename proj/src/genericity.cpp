#include "strata/genericity.hpp"

#include <array>

#include "strata/enumerate.hpp"
#include "strata/json_io.hpp"
#include "strata/sweep.hpp"

namespace strata {

std::vector<Term> default_probes() {
  return {parse("x"), terms::id(), terms::delta(), parse("\\x.(\\x.x x) (\\x.x x)"), parse("y z")};
}

namespace {

Meaning decided(const Oracle& o, const Term& t) {
  Meaning m = o.classify(t);
  if (m == Meaning::Unknown) throw UndeterminedError("meaningfulness of '" + print(t) + "' is undetermined", t);
  return m;
}

void require_meaningless(const Oracle& o, const Term& t) {
  if (decided(o, t) != Meaning::Meaningless)
    throw PreconditionError("the hole term '" + print(t) + "' is meaningful");
}

}  // namespace

SurfaceReport surface_genericity_check(const Context& c, const Term& t, const std::vector<Term>& probes,
                                       const Oracle& o) {
  require_meaningless(o, t);
  SurfaceReport r;
  r.context = c;
  r.hole_term = t;
  r.plugged_status = decided(o, c.plug(t));
  r.hypothesis = r.plugged_status == Meaning::Meaningful;
  for (const auto& u : probes) {
    Meaning m = decided(o, c.plug(u));
    r.probes.push_back(u);
    r.probe_status.push_back(m);
    if (r.hypothesis && m != Meaning::Meaningful)
      r.violations.push_back("C<" + print(t) + "> is meaningful but C<" + print(u) + "> is not");
  }
  return r;
}

GenericityReport stratified_genericity_check(const Context& c, const Term& t, const std::vector<Term>& probes,
                                             Level k, const Oracle& o) {
  require_meaningless(o, t);
  GenericityReport r;
  r.context = c;
  r.hole_term = t;
  r.calculus = o.calculus();
  r.level = k;
  const Term ct = c.plug(t);

  r.trace = normalize(ct, r.calculus, k, o.fuel());
  if (r.trace.outcome == Outcome::Cycle)
    throw PreconditionError("C<t> = '" + print(ct) + "' is not S_" + k.str() + "-normalizing (cycle)");
  if (r.trace.outcome == Outcome::FuelExhausted)
    throw UndeterminedError("S_" + k.str() + "-normalization of '" + print(ct) + "' ran out of fuel", ct);

  r.approximant = approximant_or_throw(ct, o);
  Term cur = r.approximant;
  for (const auto& s : r.trace.steps) {
    auto mapped = approximate_step(s, o);
    if (std::holds_alternative<Collapsed>(mapped)) continue;
    try {
      Step lifted = lift_step(std::get<Mapped>(mapped).partial_step, cur);
      cur = lifted.after;
      r.partial_steps.push_back(std::move(lifted));
    } catch (const LiftError& e) {
      r.failures.push_back(std::string("partial chain: ") + e.what());
      r.skeleton = cur;
      return r;
    }
  }
  r.skeleton = cur;
  r.skeleton_bno = is_bno(r.skeleton, r.calculus, k);
  if (!r.skeleton_bno) r.failures.push_back("skeleton '" + print(r.skeleton) + "' is not in bno_" + k.str());

  // Lift the partial chain onto a ⊥-free term above the approximant.
  auto replay = [&](const Term& start, std::vector<Step>& out) -> Term {
    Term x = start;
    for (const auto& ps : r.partial_steps) {
      Step s = lift_step(ps, x);
      if (!k.admits(s.level_required))
        throw LiftError("lifted step at depth " + std::to_string(s.level_required) + " exceeds level " + k.str());
      x = s.after;
      out.push_back(std::move(s));
    }
    return x;
  };

  try {
    r.normal_form = replay(ct, r.lifted);
  } catch (const LiftError& e) {
    r.failures.push_back(std::string("lifting onto C<t>: ") + e.what());
    return r;
  }
  r.nf_class = classify_nf(*r.normal_form, r.calculus, k);
  if (r.nf_class == NfClass::NotNf) r.failures.push_back("t' = '" + print(*r.normal_form) + "' is not in no_" + k.str());
  r.nf_eq_skeleton = strat_eq(*r.normal_form, r.skeleton, r.calculus, k);
  if (!r.nf_eq_skeleton) r.failures.push_back("t' is not ≡_" + k.str() + " to the skeleton");

  for (const auto& u : probes) {
    ProbeOutcome po;
    po.probe = u;
    po.plugged = c.plug(u);
    po.approximant_below = partial_leq(r.approximant, po.plugged);
    const std::string tag = "probe '" + print(u) + "': ";
    if (!po.approximant_below) {
      r.failures.push_back(tag + "A(C<t>) is not below C<u>");
      r.probes.push_back(std::move(po));
      continue;
    }
    try {
      po.normal_form = replay(po.plugged, po.lifted);
      po.nf_class = classify_nf(*po.normal_form, r.calculus, k);
      po.eq_hole_nf = strat_eq(*r.normal_form, *po.normal_form, r.calculus, k);
      if (po.nf_class == NfClass::NotNf) r.failures.push_back(tag + "u' is not in no_" + k.str());
      if (!po.eq_hole_nf) r.failures.push_back(tag + "u' is not ≡_" + k.str() + " to t'");
      if (po.lifted.size() != r.partial_steps.size()) r.failures.push_back(tag + "step count differs");
    } catch (const LiftError& e) {
      r.failures.push_back(tag + e.what());
    }
    r.probes.push_back(std::move(po));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Assumption campaigns

std::string to_string(Axiom a) {
  switch (a) {
    case Axiom::DynamicApproximation: return "dynamic-approximation";
    case Axiom::DynamicLift: return "dynamic-lift";
    case Axiom::NormalFormObservability: return "normal-form-observability";
    case Axiom::StableObservables: return "stable-observables";
  }
  return "?";
}

std::size_t AxiomReport::failures() const {
  std::size_t n = 0;
  for (const auto& t : tally) n += t.failures.size();
  return n;
}

void AxiomReport::merge(const AxiomReport& o) {
  terms += o.terms;
  skipped += o.skipped;
  for (int i = 0; i < 4; ++i) {
    tally[i].instances += o.tally[i].instances;
    tally[i].passes += o.tally[i].passes;
    tally[i].failures.insert(tally[i].failures.end(), o.tally[i].failures.begin(), o.tally[i].failures.end());
  }
}

namespace {

const std::array<Level, 5> kAxiomLevels{Level::fin(0), Level::fin(1), Level::fin(2), Level::fin(3), Level::omega()};
constexpr std::size_t kStepsPerTerm = 6;

json step_cert(Axiom a, const Term& t, const Step& s) {
  return json{{"axiom", static_cast<int>(a)},
              {"calculus", to_string(s.calculus)},
              {"term", print_raw(t)},
              {"position", s.occurrence.position.str()},
              {"rule", to_string(s.occurrence.rule)},
              {"list_length", s.occurrence.list_length}};
}

json level_cert(Axiom a, Calculus c, const Term& t, Level k) {
  return json{{"axiom", static_cast<int>(a)}, {"calculus", to_string(c)}, {"term", print_raw(t)}, {"level", k.str()}};
}

// Each check returns an empty string on success and a message on violation.
// UndeterminedError propagates: the instance is then not counted.

std::string check_a1(const Step& s, const Oracle& o) {
  Term a_before = approximant_or_throw(s.before, o);
  Term a_after = approximant_or_throw(s.after, o);
  auto r = approximate_step(s, o);
  if (std::holds_alternative<Collapsed>(r)) {
    if (!partial_leq(a_after, a_before)) return "collapsed step but A(after) is not below A(before)";
    return {};
  }
  const auto& m = std::get<Mapped>(r);
  if (!alpha_eq(m.partial_step.before, a_before)) return "partial step does not start at A(before)";
  if (!partial_leq(a_after, m.over)) return "A(after) is not below the partial target";
  if (m.partial_step.level_required != s.level_required) return "partial step changes level";
  return {};
}

std::string check_a2(const Step& s, const Term& bigger, const Oracle& o) {
  auto r = approximate_step(s, o);
  if (std::holds_alternative<Collapsed>(r)) return {};
  const Step& ps = std::get<Mapped>(r).partial_step;
  if (!partial_leq(ps.before, bigger)) return "certificate term is not above the approximant";
  try {
    Step lifted = lift_step(ps, bigger);
    if (lifted.level_required != ps.level_required) return "lifted step changes level";
  } catch (const LiftError& e) {
    return e.what();
  }
  return {};
}

std::string check_a3(const Term& t, Level k, const Oracle& o) {
  Term a = approximant_or_throw(t, o);
  if (!is_bno(a, o.calculus(), k)) return "A(t) = '" + print(a) + "' is not in bno_" + k.str();
  return {};
}

std::string check_a4(const Term& a, const Term& bigger, Level k, Calculus c) {
  if (!partial_leq(a, bigger)) return "certificate term is not above the approximant";
  if (!is_bno(bigger, c, k)) return "refinement '" + print(bigger) + "' leaves bno_" + k.str();
  if (!strat_eq(a, bigger, c, k)) return "refinement is not ≡_" + k.str() + " to A(t)";
  return {};
}

void record(AxiomTally& tally, Axiom a, const std::string& msg, json cert) {
  ++tally.instances;
  if (msg.empty()) {
    ++tally.passes;
  } else {
    tally.failures.push_back(AxiomFailure{a, std::move(cert), msg});
  }
}

}  // namespace

AxiomReport check_axioms_on(const Term& t, const Oracle& o, std::uint64_t seed) {
  AxiomReport rep;
  rep.calculus = o.calculus();
  rep.terms = 1;
  const Calculus c = o.calculus();
  Term a;
  try {
    if (contains_bot(t)) throw UndeterminedError("partial corpus term", t);
    a = approximant_or_throw(t, o);
  } catch (const UndeterminedError&) {
    rep.skipped = 1;
    return rep;
  }
  std::mt19937_64 rng(seed);
  RandomTermConfig small;
  small.max_size = 5;
  const Term refined = random_refinement(a, rng, small);

  auto redexes = find_redexes(t, c, Level::omega());
  if (redexes.size() > kStepsPerTerm) redexes.resize(kStepsPerTerm);
  for (const auto& occ : redexes) {
    Step s = make_step(t, occ, c);
    try {
      record(rep.of(Axiom::DynamicApproximation), Axiom::DynamicApproximation, check_a1(s, o),
             step_cert(Axiom::DynamicApproximation, t, s));
    } catch (const UndeterminedError&) {
    }
    for (const Term& big : {t, refined}) {
      json cert = step_cert(Axiom::DynamicLift, t, s);
      cert["bigger"] = print_raw(big);
      try {
        record(rep.of(Axiom::DynamicLift), Axiom::DynamicLift, check_a2(s, big, o), std::move(cert));
      } catch (const UndeterminedError&) {
      }
    }
  }
  for (Level k : kAxiomLevels) {
    if (classify_nf(t, c, k) != NfClass::NotNf)
      record(rep.of(Axiom::NormalFormObservability), Axiom::NormalFormObservability, check_a3(t, k, o),
             level_cert(Axiom::NormalFormObservability, c, t, k));
    if (is_bno(a, c, k)) {
      for (const Term& big : {t, refined}) {
        json cert = level_cert(Axiom::StableObservables, c, t, k);
        cert["bigger"] = print_raw(big);
        record(rep.of(Axiom::StableObservables), Axiom::StableObservables, check_a4(a, big, k, c), std::move(cert));
      }
    }
  }
  return rep;
}

bool replay_certificate(const json& cert, std::size_t fuel) {
  const Calculus c = parse_calculus(cert.at("calculus").get<std::string>());
  const Oracle o(c, fuel);
  const Term t = parse(cert.at("term").get<std::string>());
  const auto axiom = static_cast<Axiom>(cert.at("axiom").get<int>());
  auto step = [&] {
    RedexOccurrence occ{Position::parse(cert.at("position").get<std::string>()),
                        parse_rule(cert.at("rule").get<std::string>()), cert.value("list_length", std::size_t{0})};
    return make_step(t, occ, c);
  };
  switch (axiom) {
    case Axiom::DynamicApproximation: return !check_a1(step(), o).empty();
    case Axiom::DynamicLift: return !check_a2(step(), parse(cert.at("bigger").get<std::string>()), o).empty();
    case Axiom::NormalFormObservability:
      return !check_a3(t, Level::parse(cert.at("level").get<std::string>()), o).empty();
    case Axiom::StableObservables:
      return !check_a4(approximant_or_throw(t, o), parse(cert.at("bigger").get<std::string>()),
                       Level::parse(cert.at("level").get<std::string>()), c)
                  .empty();
  }
  return false;
}

AxiomReport axiom_suite(Calculus c, const std::vector<Term>& corpus, std::size_t fuel, std::uint64_t seed) {
  return parallel::axiom_campaign(corpus, Oracle(c, fuel), seed);
}

// ---------------------------------------------------------------------------
// Serialisation

namespace {

json steps_json(const std::vector<Step>& steps) {
  json a = json::array();
  for (const auto& s : steps) a.push_back(to_json(s));
  return a;
}

}  // namespace

json to_json(const SurfaceReport& r) {
  json probes = json::array();
  for (std::size_t i = 0; i < r.probes.size(); ++i)
    probes.push_back(json{{"probe", print(r.probes[i])}, {"status", to_string(r.probe_status[i])}});
  return json{{"context", r.context.str()},   {"hole_term", print(r.hole_term)},
              {"plugged_status", to_string(r.plugged_status)}, {"hypothesis", r.hypothesis},
              {"probes", std::move(probes)},  {"violations", r.violations},
              {"ok", r.ok()}};
}

json to_json(const GenericityReport& r) {
  json probes = json::array();
  for (const auto& p : r.probes) {
    json j{{"probe", print(p.probe)},
           {"plugged", print(p.plugged)},
           {"approximant_below", p.approximant_below},
           {"steps", steps_json(p.lifted)},
           {"step_count", p.lifted.size()}};
    if (p.normal_form) {
      j["normal_form"] = print(*p.normal_form);
      j["nf_class"] = to_string(p.nf_class);
      j["equal_to_hole_nf"] = p.eq_hole_nf;
    }
    probes.push_back(std::move(j));
  }
  json j{{"context", r.context.str()},
         {"hole_term", print(r.hole_term)},
         {"calculus", to_string(r.calculus)},
         {"level", r.level.str()},
         {"approximant", print(r.approximant)},
         {"trace", to_json(r.trace)},
         {"i", r.steps()},
         {"partial_steps", steps_json(r.partial_steps)},
         {"skeleton", print(r.skeleton)},
         {"skeleton_bno", r.skeleton_bno},
         {"lifted", steps_json(r.lifted)},
         {"probes", std::move(probes)},
         {"failures", r.failures},
         {"ok", r.ok()}};
  if (r.normal_form) {
    j["normal_form"] = print(*r.normal_form);
    j["nf_class"] = to_string(r.nf_class);
    j["normal_form_equals_skeleton"] = r.nf_eq_skeleton;
  }
  return j;
}

json to_json(const AxiomReport& r) {
  json axioms = json::array();
  for (int i = 1; i <= 4; ++i) {
    const auto a = static_cast<Axiom>(i);
    const auto& t = r.of(a);
    json fails = json::array();
    for (const auto& f : t.failures) fails.push_back(json{{"message", f.message}, {"certificate", f.certificate}});
    axioms.push_back(json{{"axiom", i},
                          {"name", to_string(a)},
                          {"instances", t.instances},
                          {"passes", t.passes},
                          {"failures", std::move(fails)}});
  }
  return json{{"calculus", to_string(r.calculus)},
              {"terms", r.terms},
              {"skipped", r.skipped},
              {"axioms", std::move(axioms)},
              {"ok", r.ok()}};
}

}  // namespace strata

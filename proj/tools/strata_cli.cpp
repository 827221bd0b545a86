// strata: command-line front end for the library.
// Exit codes: 0 success / equal / pass, 1 violation / not-equal / negative
// answer, 2 unknown or undetermined, 3 usage error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "strata/enumerate.hpp"
#include "strata/genericity.hpp"
#include "strata/json_io.hpp"
#include "strata/normal_forms.hpp"
#include "strata/theories.hpp"
#include "strata/types.hpp"

using namespace strata;

namespace {

constexpr int kOk = 0, kNo = 1, kUnknown = 2, kUsage = 3;

struct Config {
  std::string calculus = "cbv";
  std::string level = "omega";
  std::string strategy = "lo";
  std::size_t fuel = default_fuel();
  std::string format = "human";
  std::string annotations;
};

struct Env {
  Calculus calculus;
  Level level;
  Strategy strategy;
  std::size_t fuel;
  bool as_json;
  Oracle oracle;
};

Env resolve(const Config& cfg) {
  Calculus c = parse_calculus(cfg.calculus);
  Env e{c, Level::parse(cfg.level), parse_strategy(cfg.strategy), cfg.fuel, cfg.format == "json", Oracle(c, cfg.fuel)};
  if (!cfg.annotations.empty()) {
    std::ifstream in(cfg.annotations);
    if (!in) throw std::invalid_argument("cannot read annotation file '" + cfg.annotations + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    load_annotations(e.oracle, ss.str());
  }
  return e;
}

void emit(const Env& e, const json& j, const std::string& human) {
  if (e.as_json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << human;
}

std::string steps_text(const std::vector<Step>& steps) {
  std::ostringstream os;
  for (std::size_t i = 0; i < steps.size(); ++i)
    os << "  " << i + 1 << ". " << to_string(steps[i].occurrence.rule) << " @'" << steps[i].occurrence.position.str()
       << "' (depth " << steps[i].level_required << "): " << print(steps[i].after) << "\n";
  return os.str();
}

int cmd_parse(const Env& e, const std::string& src) {
  Term t = parse(src);
  emit(e, json{{"term", print(t)}, {"raw", print_raw(t)}, {"size", t.size()}, {"free_vars", free_vars(t)}},
       print(t) + "\n");
  return kOk;
}

int cmd_reduce(const Env& e, const std::string& src) {
  Trace tr = normalize(parse(src), e.calculus, e.level, e.fuel, e.strategy);
  std::ostringstream os;
  os << steps_text(tr.steps) << "outcome: " << to_string(tr.outcome);
  if (tr.outcome == Outcome::Cycle) os << " (back to the term before step " << tr.cycle_index + 1 << ")";
  os << "\nfinal: " << print(tr.final_term()) << "\n";
  emit(e, to_json(tr), os.str());
  return tr.outcome == Outcome::FuelExhausted ? kUnknown : kOk;
}

int cmd_nf_check(const Env& e, const std::string& src) {
  Term t = parse(src);
  json j{{"term", print(t)}, {"calculus", to_string(e.calculus)}, {"level", e.level.str()}};
  std::string human;
  bool normal;
  if (contains_bot(t)) {
    normal = is_bno(t, e.calculus, e.level);
    j["bno"] = normal;
    human = std::string("bno_") + e.level.str() + ": " + (normal ? "yes" : "no") + "\n";
  } else {
    NfClass cls = classify_nf(t, e.calculus, e.level);
    normal = cls != NfClass::NotNf;
    json reds = json::array();
    for (const auto& r : find_redexes(t, e.calculus, e.level))
      reds.push_back(json{{"rule", to_string(r.rule)}, {"position", r.position.str()}});
    j["class"] = to_string(cls);
    j["redexes"] = reds;
    human = "class: " + to_string(cls) + "\n";
    for (const auto& r : reds)
      human += "  redex " + r["rule"].get<std::string>() + " @'" + r["position"].get<std::string>() + "'\n";
  }
  emit(e, j, human);
  return normal ? kOk : kNo;
}

int cmd_eq(const Env& e, const std::string& a, const std::string& b) {
  bool r = strat_eq(parse(a), parse(b), e.calculus, e.level);
  emit(e, json{{"equal", r}, {"level", e.level.str()}, {"calculus", to_string(e.calculus)}},
       std::string(r ? "true" : "false") + "\n");
  return r ? kOk : kNo;
}

int cmd_meaning(const Env& e, const std::string& src) {
  MeaningStatus st = e.oracle.status(parse(src));
  std::string human = to_string(st.kind) + (st.asserted ? " (asserted)" : "") + "\n";
  if (st.trace) human += steps_text(st.trace->steps) + "outcome: " + to_string(st.trace->outcome) + "\n";
  emit(e, to_json(st), human);
  return st.kind == Meaning::Meaningful ? kOk : st.kind == Meaning::Meaningless ? kNo : kUnknown;
}

int cmd_approximant(const Env& e, const std::string& src) {
  Approximant a = meaningful_approximant(parse(src), e.oracle);
  if (auto* u = std::get_if<Undetermined>(&a)) {
    emit(e, json{{"undetermined", print(u->subterm)}, {"position", u->position.str()}},
         "undetermined: " + print(u->subterm) + " at '" + u->position.str() + "'\n");
    return kUnknown;
  }
  const Term& t = std::get<Term>(a);
  bool bno = is_bno(t, e.calculus, e.level);
  emit(e, json{{"approximant", print(t)}, {"bno", bno}, {"level", e.level.str()}},
       print(t) + "\nbno_" + e.level.str() + ": " + (bno ? "yes" : "no") + "\n");
  return kOk;
}

int cmd_type_check(const Env& e, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read derivation file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& ex) {
    throw std::invalid_argument(std::string("malformed JSON: ") + ex.what());
  }
  Derivation d = derivation_from_json(doc);
  auto vs = check_derivation(d);
  json arr = json::array();
  std::string human = vs.empty() ? "ok: " + d.judgment() + "\n" : "";
  for (const auto& v : vs) {
    std::string p;
    for (auto i : v.path) p += (p.empty() ? "" : ".") + std::to_string(i);
    arr.push_back(json{{"path", v.path}, {"message", v.message}});
    human += "violation at [" + p + "]: " + v.message + "\n";
  }
  emit(e, json{{"ok", vs.empty()}, {"judgment", d.judgment()}, {"violations", arr}}, human);
  return vs.empty() ? kOk : kNo;
}

int cmd_type_infer(const Env& e, const std::string& src) {
  TypabilityResult r = typable(parse(src), e.calculus, e.fuel);
  json j{{"result", to_string(r.kind)}};
  std::string human = to_string(r.kind) + "\n";
  if (r.derivation) {
    j["derivation"] = to_json(*r.derivation);
    human += r.derivation->judgment() + "\n";
  }
  emit(e, j, human);
  return r.kind == Typability::Typed ? kOk : r.kind == Typability::Untypable ? kNo : kUnknown;
}

std::vector<Term> parse_probes(const std::vector<std::string>& ps) {
  if (ps.empty()) return default_probes();
  std::vector<Term> out;
  for (const auto& p : ps) out.push_back(parse(p));
  return out;
}

int cmd_genericity(const Env& e, const std::string& ctx, const std::string& hole, const std::vector<std::string>& ps,
                   bool surface) {
  Context c = Context::parse(ctx);
  Term t = parse(hole);
  auto probes = parse_probes(ps);
  try {
    if (surface) {
      SurfaceReport r = surface_genericity_check(c, t, probes, e.oracle);
      std::ostringstream os;
      os << "C<t>: " << to_string(r.plugged_status) << (r.hypothesis ? "" : " (no claim)") << "\n";
      for (std::size_t i = 0; i < r.probes.size(); ++i)
        os << "  C<" << print(r.probes[i]) << ">: " << to_string(r.probe_status[i]) << "\n";
      for (const auto& v : r.violations) os << "VIOLATION: " << v << "\n";
      emit(e, to_json(r), os.str());
      return r.ok() ? kOk : kNo;
    }
    GenericityReport r = stratified_genericity_check(c, t, probes, e.level, e.oracle);
    std::ostringstream os;
    os << "A(C<t>) = " << print(r.approximant) << "\n"
       << "i = " << r.steps() << "\n"
       << "skeleton: " << print(r.skeleton) << "\n";
    if (r.normal_form) os << "NF: " << print(*r.normal_form) << "\n";
    for (const auto& p : r.probes) {
      os << "  u = " << print(p.probe) << ": " << p.lifted.size() << " steps";
      if (p.normal_form) os << " -> " << print(*p.normal_form) << (p.eq_hole_nf ? "" : " (NOT equal)");
      os << "\n";
    }
    for (const auto& f : r.failures) os << "FAILURE: " << f << "\n";
    emit(e, to_json(r), os.str());
    return r.ok() ? kOk : kNo;
  } catch (const PreconditionError& ex) {
    emit(e, json{{"precondition_failed", ex.what()}}, std::string("precondition failed: ") + ex.what() + "\n");
    return kNo;
  }
}

int cmd_judge(const Env& e, const std::string& theory, const std::string& a, const std::string& b,
              std::size_t budget) {
  Verdict v = judge(parse_theory(theory), parse(a), parse(b), e.oracle, JudgeBudgets{budget});
  emit(e, to_json(v), to_string(v.kind) + " (rule " + v.rule + "): " + v.justification + "\n");
  return v.kind == VerdictKind::Equal ? kOk : v.kind == VerdictKind::NotEqual ? kNo : kUnknown;
}

int cmd_axioms(const Env& e, std::size_t count, std::uint64_t seed, std::size_t max_size) {
  std::mt19937_64 rng(seed);
  RandomTermConfig cfg;
  cfg.max_size = max_size;
  std::vector<Term> corpus;
  for (std::size_t i = 0; i < count; ++i) corpus.push_back(random_term(rng, cfg));
  AxiomReport r = axiom_suite(e.calculus, corpus, e.fuel, seed);
  std::ostringstream os;
  os << "terms: " << r.terms << " (skipped " << r.skipped << ")\n";
  for (int i = 1; i <= 4; ++i) {
    const auto& t = r.of(static_cast<Axiom>(i));
    os << "  assumption " << i << " (" << to_string(static_cast<Axiom>(i)) << "): " << t.passes << "/" << t.instances
       << "\n";
    for (const auto& f : t.failures) os << "    FAILURE: " << f.message << " " << f.certificate.dump() << "\n";
  }
  emit(e, to_json(r), os.str());
  return r.ok() ? kOk : kNo;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"strata: stratified reduction, approximants and genericity for value/name substitution calculi"};
  app.require_subcommand(1);
  Config cfg;
  auto add_common = [&](CLI::App* sc) {
    sc->add_option("--calculus,-c", cfg.calculus, "cbv | cbn")->check(CLI::IsMember({"cbv", "cbn"}));
    sc->add_option("--level,-k", cfg.level, "stratification level: natural number or omega");
    sc->add_option("--strategy", cfg.strategy, "lo | ri");
    sc->add_option("--fuel", cfg.fuel, "reduction step budget (default 10000 or $STRATA_FUEL)");
    sc->add_option("--format", cfg.format, "human | json")->check(CLI::IsMember({"human", "json"}));
    sc->add_option("--annotations", cfg.annotations, "JSON file asserting meaningless terms");
  };

  std::string t1, t2, file, ctx, hole, theory = "lambda";
  std::vector<std::string> probes;
  bool surface = false;
  std::size_t budget = 2, count = 500, max_size = 10;
  std::uint64_t seed = 1;
  int rc = kOk;

  auto* p = app.add_subcommand("parse", "parse and print a term");
  p->add_option("term", t1)->required();
  auto* red = app.add_subcommand("reduce", "normalise at a level");
  red->add_option("term", t1)->required();
  auto* nf = app.add_subcommand("nf-check", "normal-form grammar membership");
  nf->add_option("term", t1)->required();
  auto* eq = app.add_subcommand("eq", "stratified equality");
  eq->add_option("left", t1)->required();
  eq->add_option("right", t2)->required();
  auto* mean = app.add_subcommand("meaning", "meaningfulness status");
  mean->add_option("term", t1)->required();
  auto* apx = app.add_subcommand("approximant", "meaningful approximant");
  apx->add_option("term", t1)->required();
  auto* tc = app.add_subcommand("type-check", "check a derivation document");
  tc->add_option("file", file)->required();
  auto* ti = app.add_subcommand("type-infer", "derive a typing when the term is meaningful");
  ti->add_option("term", t1)->required();
  auto* gen = app.add_subcommand("genericity", "stratified (or surface) genericity report");
  gen->add_option("--context", ctx, "context with @ marking the hole")->required();
  gen->add_option("--hole-term,--hole", hole, "meaningless term for the hole")->required();
  gen->add_option("--probes", probes, "probe terms (comma separated)")->delimiter(',');
  gen->add_flag("--surface", surface, "qualitative meaningfulness check only");
  auto* jd = app.add_subcommand("judge", "decide an equation in a theory when possible");
  jd->add_option("--theory", theory, "lambda | h | hstar")->check(CLI::IsMember({"lambda", "h", "hstar"}));
  jd->add_option("--context-budget", budget, "maximum context size for the falsifier");
  jd->add_option("left", t1)->required();
  jd->add_option("right", t2)->required();
  auto* ax = app.add_subcommand("axioms", "assumption campaign over a random corpus");
  ax->add_option("--count", count, "corpus size");
  ax->add_option("--seed", seed, "random seed");
  ax->add_option("--max-size", max_size, "maximum term size");
  for (auto* sc : {p, red, nf, eq, mean, apx, tc, ti, gen, jd, ax}) add_common(sc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    const Env e = resolve(cfg);
    if (*p) rc = cmd_parse(e, t1);
    else if (*red) rc = cmd_reduce(e, t1);
    else if (*nf) rc = cmd_nf_check(e, t1);
    else if (*eq) rc = cmd_eq(e, t1, t2);
    else if (*mean) rc = cmd_meaning(e, t1);
    else if (*apx) rc = cmd_approximant(e, t1);
    else if (*tc) rc = cmd_type_check(e, file);
    else if (*ti) rc = cmd_type_infer(e, t1);
    else if (*gen) rc = cmd_genericity(e, ctx, hole, probes, surface);
    else if (*jd) rc = cmd_judge(e, theory, t1, t2, budget);
    else if (*ax) rc = cmd_axioms(e, count, seed, max_size);
  } catch (const UndeterminedError& ex) {
    std::cerr << "undetermined: " << ex.what() << "\n";
    return kUnknown;
  } catch (const ParseError& ex) {
    std::cerr << "syntax error: " << ex.what() << "\n";
    return kUsage;
  } catch (const DerivationError& ex) {
    std::cerr << "invalid derivation document: " << ex.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kUsage;
  }
  return rc;
}

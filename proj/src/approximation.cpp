#include "strata/approximation.hpp"

#include <mutex>

#include <json.hpp>

namespace strata {

std::string to_string(Meaning m) {
  switch (m) {
    case Meaning::Meaningful: return "meaningful";
    case Meaning::Meaningless: return "meaningless";
    case Meaning::Unknown: return "unknown";
  }
  return "?";
}

Oracle::Oracle(const Oracle& o) : calculus_(o.calculus_), fuel_(o.fuel_), asserted_(o.asserted_) {
  std::shared_lock lock(o.mu_);
  memo_ = o.memo_;
}

void Oracle::assert_meaningless(const Term& t) {
  if (t.contains_bot()) throw std::invalid_argument("annotations must not contain bot");
  asserted_.insert(canonical_key(t));
  std::unique_lock lock(mu_);
  memo_.clear();
}

bool Oracle::is_asserted(const Term& t) const { return asserted_.count(canonical_key(t)) > 0; }

std::size_t Oracle::memo_size() const {
  std::shared_lock lock(mu_);
  return memo_.size();
}

MeaningStatus Oracle::status(const Term& t) const {
  if (t.contains_bot()) throw std::invalid_argument("meaning_status expects a term without bot");
  MeaningStatus st;
  if (is_asserted(t)) {
    st.kind = Meaning::Meaningless;
    st.asserted = true;
    return st;
  }
  Trace tr = normalize(t, calculus_, Level::fin(0), fuel_);
  st.fuel_spent = tr.steps.size();
  switch (tr.outcome) {
    case Outcome::NormalForm: st.kind = Meaning::Meaningful; break;
    case Outcome::Cycle: st.kind = Meaning::Meaningless; break;
    case Outcome::FuelExhausted: st.kind = Meaning::Unknown; break;
  }
  st.trace = std::move(tr);
  return st;
}

Meaning Oracle::classify(const Term& t) const {
  if (t.contains_bot()) throw std::invalid_argument("meaning_status expects a term without bot");
  // Values are S_0-normal in CbV, variables in both calculi.
  if (t.is(Kind::Var) || (calculus_ == Calculus::CbV && t.is(Kind::Abs))) return Meaning::Meaningful;
  std::string key = canonical_key(t);
  {
    std::shared_lock lock(mu_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
  }
  Meaning m;
  if (asserted_.count(key)) {
    m = Meaning::Meaningless;
  } else {
    Trace tr = normalize(t, calculus_, Level::fin(0), fuel_);
    m = tr.outcome == Outcome::NormalForm ? Meaning::Meaningful
        : tr.outcome == Outcome::Cycle   ? Meaning::Meaningless
                                         : Meaning::Unknown;
  }
  std::unique_lock lock(mu_);
  memo_.emplace(std::move(key), m);
  return m;
}

MeaningStatus meaning_status(const Term& t, Calculus c, std::size_t fuel) { return Oracle(c, fuel).status(t); }

void load_annotations(Oracle& o, const std::string& json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text);
  if (!j.is_array()) throw std::invalid_argument("annotation file must hold a JSON array");
  for (const auto& e : j) {
    std::string status = e.value("status", "meaningless");
    if (status != "meaningless") throw std::invalid_argument("unsupported annotation status '" + status + "'");
    o.assert_meaningless(parse(e.at("term").get<std::string>()));
  }
}

// ---- Approximants --------------------------------------------------------

namespace {

struct Approximator {
  const Oracle& oracle;
  Position cur;
  std::optional<Undetermined> undetermined;

  Term run(const Term& t) {
    if (undetermined) return t;
    switch (oracle.classify(t)) {
      case Meaning::Meaningless: return Term::bot();
      case Meaning::Unknown:
        undetermined = Undetermined{cur, t};
        return t;
      case Meaning::Meaningful: break;
    }
    switch (t.kind()) {
      case Kind::Var: return t;
      case Kind::Abs: return Term::abs(t.name(), down(t.body(), Edge::AbsBody));
      case Kind::App: {
        Term f = down(t.fun(), Edge::AppFun);
        return Term::app(f, down(t.arg(), Edge::AppArg));
      }
      case Kind::Es: {
        Term b = down(t.body(), Edge::EsBody);
        return Term::es(b, t.name(), down(t.arg(), Edge::EsArg));
      }
      case Kind::Bot: return t;
    }
    return t;
  }

  Term down(const Term& t, Edge e) {
    cur.path.push_back(e);
    Term r = run(t);
    cur.path.pop_back();
    return r;
  }
};

}  // namespace

Approximant meaningful_approximant(const Term& t, const Oracle& o) {
  if (t.contains_bot()) throw std::invalid_argument("meaningful_approximant expects a term without bot");
  Approximator a{o, {}, std::nullopt};
  Term r = a.run(t);
  if (a.undetermined) return *a.undetermined;
  return r;
}

Term approximant_or_throw(const Term& t, const Oracle& o) {
  Approximant a = meaningful_approximant(t, o);
  if (auto* u = std::get_if<Undetermined>(&a))
    throw UndeterminedError("meaningfulness undetermined at '" + u->position.str() + "'", u->subterm);
  return std::get<Term>(a);
}

StepApproximation approximate_step(const Step& s, const Oracle& o) {
  Term before = approximant_or_throw(s.before, o);
  const Position& p = s.occurrence.position;
  const Term* cur = &before;
  if (cur->is(Kind::Bot)) return Collapsed{};
  for (Edge e : p.path) {
    cur = &cur->child(e);
    if (cur->is(Kind::Bot)) return Collapsed{};
  }
  if (!matches(*cur, s.occurrence.rule))
    throw std::logic_error("redex pattern of " + to_string(s.occurrence.rule) + " lost in the approximant at '" +
                           p.str() + "'");
  RedexOccurrence occ = s.occurrence;
  occ.list_length = s.occurrence.rule == Rule::DB   ? list_depth(cur->fun())
                    : s.occurrence.rule == Rule::SV ? list_depth(cur->arg())
                                                    : 0;
  Step partial = make_step(before, occ, s.calculus);
  Term over = partial.after;
  return Mapped{std::move(partial), std::move(over)};
}

Step lift_step(const Step& partial, const Term& bigger) {
  if (!partial_leq(partial.before, bigger)) throw LiftError("lift_step: source is not below the bigger term");
  const Position& p = partial.occurrence.position;
  const Term& sub = subterm_at(bigger, p);
  if (!matches(sub, partial.occurrence.rule)) throw LiftError("lift_step: redex pattern absent in the bigger term");
  RedexOccurrence occ = partial.occurrence;
  occ.list_length = occ.rule == Rule::DB ? list_depth(sub.fun()) : occ.rule == Rule::SV ? list_depth(sub.arg()) : 0;
  Step lifted = make_step(bigger, occ, partial.calculus);
  if (!partial_leq(partial.after, lifted.after)) throw LiftError("lift_step: lifted target does not dominate");
  return lifted;
}

}  // namespace strata

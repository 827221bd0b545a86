#include "strata/reduction.hpp"

#include <cstdlib>
#include <functional>
#include <unordered_map>

namespace strata {

std::string to_string(Rule r) {
  switch (r) {
    case Rule::DB: return "dB";
    case Rule::SV: return "sv";
    case Rule::SN: return "sN";
    case Rule::BetaV: return "betaV";
  }
  return "?";
}

Rule parse_rule(std::string_view s) {
  if (s == "dB") return Rule::DB;
  if (s == "sv") return Rule::SV;
  if (s == "sN") return Rule::SN;
  if (s == "betaV") return Rule::BetaV;
  throw std::invalid_argument("unknown rule '" + std::string(s) + "'");
}

std::string to_string(Strategy s) {
  return s == Strategy::LeftmostOutermost ? "leftmost-outermost" : "rightmost-innermost";
}

Strategy parse_strategy(std::string_view s) {
  if (s == "leftmost-outermost" || s == "lo") return Strategy::LeftmostOutermost;
  if (s == "rightmost-innermost" || s == "ri") return Strategy::RightmostInnermost;
  throw std::invalid_argument("unknown strategy '" + std::string(s) + "'");
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::NormalForm: return "normal";
    case Outcome::Cycle: return "cycle";
    case Outcome::FuelExhausted: return "fuel-exhausted";
  }
  return "?";
}

std::size_t default_fuel() {
  if (const char* env = std::getenv("STRATA_FUEL")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && end != env) return static_cast<std::size_t>(v);
  }
  return kDefaultFuel;
}

// ---- Matching and decomposition ----------------------------------------

bool matches(const Term& t, Rule rule) {
  switch (rule) {
    case Rule::DB: return t.is(Kind::App) && strip_list(t.fun()).is(Kind::Abs);
    case Rule::SV: return t.is(Kind::Es) && is_value(strip_list(t.arg()));
    case Rule::SN: return t.is(Kind::Es);
    case Rule::BetaV: return t.is(Kind::App) && t.fun().is(Kind::Abs) && is_value(t.arg());
  }
  return false;
}

namespace {

// Peel the ES spine of t into list/core; when avoid is set, rename list
// binders that the predicate flags.
void peel(const Term& t, const std::function<bool(const std::string&)>* clash,
          const std::function<bool(const std::string&)>* taken_extra, Decomposition& d) {
  const Term* cur = &t;
  Term owned;
  while (cur->is(Kind::Es)) {
    std::string y = cur->name();
    Term body = cur->body();
    if (clash && (*clash)(y)) {
      std::string y2 = fresh_name(y, [&](const std::string& n) {
        return body.has_free(n) || (*clash)(n) || (taken_extra && (*taken_extra)(n));
      });
      body = subst(body, y, Term::var(y2));
      y = y2;
    }
    d.list.emplace_back(y, cur->arg());
    owned = body;
    cur = &owned;
  }
  d.core = *cur;
}

Decomposition decompose_impl(const Term& redex, Rule rule, bool hygienic) {
  if (!matches(redex, rule)) throw StaleRedex("term does not match rule " + to_string(rule));
  Decomposition d;
  switch (rule) {
    case Rule::DB: {
      const Term& u = redex.arg();
      std::function<bool(const std::string&)> clash = [&](const std::string& n) { return u.has_free(n); };
      peel(redex.fun(), hygienic ? &clash : nullptr, nullptr, d);
      d.other = u;
      d.var = d.core.name();
      break;
    }
    case Rule::SV: {
      const Term& t = redex.body();
      const std::string& x = redex.name();
      std::function<bool(const std::string&)> clash = [&](const std::string& n) {
        return n != x && t.has_free(n);
      };
      std::function<bool(const std::string&)> extra = [&](const std::string& n) { return n == x; };
      peel(redex.arg(), hygienic ? &clash : nullptr, &extra, d);
      d.other = t;
      d.var = x;
      break;
    }
    case Rule::SN:
      d.core = redex.arg();
      d.other = redex.body();
      d.var = redex.name();
      break;
    case Rule::BetaV:
      d.core = redex.fun();
      d.other = redex.arg();
      d.var = redex.fun().name();
      break;
  }
  return d;
}

}  // namespace

Decomposition decompose(const Term& redex, Rule rule) { return decompose_impl(redex, rule, false); }
Decomposition decompose_hygienic(const Term& redex, Rule rule) { return decompose_impl(redex, rule, true); }

Term plug_list(const std::vector<std::pair<std::string, Term>>& list, const Term& t) {
  Term cur = t;
  for (auto it = list.rbegin(); it != list.rend(); ++it) cur = Term::es(cur, it->first, it->second);
  return cur;
}

Term replug(const Decomposition& d, Rule rule) {
  switch (rule) {
    case Rule::DB: return Term::app(plug_list(d.list, d.core), d.other);
    case Rule::SV: return Term::es(d.other, d.var, plug_list(d.list, d.core));
    case Rule::SN: return Term::es(d.other, d.var, d.core);
    case Rule::BetaV: return Term::app(d.core, d.other);
  }
  return d.core;
}

Term contract(const Term& redex, Rule rule) {
  Decomposition d = decompose_hygienic(redex, rule);
  switch (rule) {
    case Rule::DB: return plug_list(d.list, Term::es(d.core.body(), d.core.name(), d.other));
    case Rule::SV: return plug_list(d.list, subst(d.other, d.var, d.core));
    case Rule::SN: return subst(d.other, d.var, d.core);
    case Rule::BetaV: return subst(d.core.body(), d.var, d.other);
  }
  return redex;
}

// ---- Redex search -------------------------------------------------------

namespace {

struct Walker {
  Calculus c;
  Level k;
  bool stop_at_first;
  std::vector<RedexOccurrence> out;
  Position cur;

  bool visit(const Term& t, unsigned depth) {
    if (t.is(Kind::App) && matches(t, Rule::DB)) {
      out.push_back({cur, Rule::DB, list_depth(t.fun())});
      if (stop_at_first) return true;
    } else if (t.is(Kind::Es)) {
      Rule r = c == Calculus::CbV ? Rule::SV : Rule::SN;
      if (matches(t, r)) {
        out.push_back({cur, r, r == Rule::SV ? list_depth(t.arg()) : 0});
        if (stop_at_first) return true;
      }
    }
    switch (t.kind()) {
      case Kind::Abs: return descend(t.body(), Edge::AbsBody, depth + (c == Calculus::CbV ? 1 : 0));
      case Kind::App:
        return descend(t.fun(), Edge::AppFun, depth) ||
               descend(t.arg(), Edge::AppArg, depth + (c == Calculus::CbN ? 1 : 0));
      case Kind::Es:
        return descend(t.body(), Edge::EsBody, depth) ||
               descend(t.arg(), Edge::EsArg, depth + (c == Calculus::CbN ? 1 : 0));
      default: return false;
    }
  }

  bool descend(const Term& t, Edge e, unsigned depth) {
    if (!k.admits(depth)) return false;
    cur.path.push_back(e);
    bool r = visit(t, depth);
    cur.path.pop_back();
    return r;
  }
};

}  // namespace

std::vector<RedexOccurrence> find_redexes(const Term& t, Calculus c, Level k) {
  Walker w{c, k, false, {}, {}};
  w.visit(t, 0);
  return std::move(w.out);
}

std::optional<RedexOccurrence> first_redex(const Term& t, Calculus c, Level k) {
  Walker w{c, k, true, {}, {}};
  w.visit(t, 0);
  if (w.out.empty()) return std::nullopt;
  return w.out.front();
}

bool is_normal(const Term& t, Calculus c, Level k) { return !first_redex(t, c, k).has_value(); }

Term apply_step(const Term& t, const RedexOccurrence& o) {
  const Term* sub;
  try {
    sub = &subterm_at(t, o.position);
  } catch (const PositionError&) {
    throw StaleRedex("redex position '" + o.position.str() + "' no longer exists");
  }
  return replace_at(t, o.position, contract(*sub, o.rule));
}

Step make_step(const Term& t, const RedexOccurrence& o, Calculus c) {
  Step s;
  s.before = t;
  s.after = apply_step(t, o);
  s.occurrence = o;
  s.calculus = c;
  s.level_required = level_of_path(o.position, c);
  return s;
}

std::optional<Step> reduce_once(const Term& t, Calculus c, Level k, Strategy s) {
  std::optional<RedexOccurrence> o;
  if (s == Strategy::LeftmostOutermost) {
    o = first_redex(t, c, k);
  } else {
    auto all = find_redexes(t, c, k);
    if (!all.empty()) o = all.back();
  }
  if (!o) return std::nullopt;
  return make_step(t, *o, c);
}

Trace normalize(const Term& t, Calculus c, Level k, std::size_t fuel, Strategy s) {
  Trace tr;
  tr.initial = t;
  tr.calculus = c;
  tr.level = k;
  tr.strategy = s;
  std::unordered_map<std::string, std::size_t> seen;
  seen.emplace(canonical_key(t), 0);
  Term cur = t;
  for (std::size_t n = 0;; ++n) {
    std::optional<Step> st = reduce_once(cur, c, k, s);
    if (!st) {
      tr.outcome = Outcome::NormalForm;
      return tr;
    }
    if (n >= fuel) {
      tr.outcome = Outcome::FuelExhausted;
      return tr;
    }
    cur = st->after;
    tr.steps.push_back(std::move(*st));
    auto [it, fresh] = seen.emplace(canonical_key(cur), tr.steps.size());
    if (!fresh) {
      tr.outcome = Outcome::Cycle;
      tr.cycle_index = it->second;
      return tr;
    }
  }
}

// ---- Plotkin ----------------------------------------------------------

namespace {
void plotkin_walk(const Term& t, bool weak, Position& cur, std::vector<RedexOccurrence>& out) {
  if (matches(t, Rule::BetaV)) out.push_back({cur, Rule::BetaV, 0});
  switch (t.kind()) {
    case Kind::Abs:
      if (weak) return;
      cur.path.push_back(Edge::AbsBody);
      plotkin_walk(t.body(), weak, cur, out);
      cur.path.pop_back();
      return;
    case Kind::App:
      cur.path.push_back(Edge::AppFun);
      plotkin_walk(t.fun(), weak, cur, out);
      cur.path.back() = Edge::AppArg;
      plotkin_walk(t.arg(), weak, cur, out);
      cur.path.pop_back();
      return;
    default: return;
  }
}
}  // namespace

std::vector<RedexOccurrence> plotkin_find_redexes(const Term& t, bool weak) {
  if (!is_pure(t)) throw std::invalid_argument("Plotkin reduction requires a pure term");
  std::vector<RedexOccurrence> out;
  Position cur;
  plotkin_walk(t, weak, cur, out);
  return out;
}

Term plotkin_step(const Term& t, const RedexOccurrence& o) {
  if (!is_pure(t)) throw std::invalid_argument("Plotkin reduction requires a pure term");
  if (o.rule != Rule::BetaV) throw StaleRedex("not a betaV occurrence");
  return apply_step(t, o);
}

}  // namespace strata

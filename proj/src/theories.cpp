#include "strata/theories.hpp"

#include <unordered_map>

#include "strata/json_io.hpp"
#include "strata/sweep.hpp"

namespace strata {

std::string to_string(Theory t) {
  switch (t) {
    case Theory::Lambda: return "lambda";
    case Theory::H: return "h";
    case Theory::HStar: return "hstar";
  }
  return "?";
}

Theory parse_theory(std::string_view s) {
  if (s == "lambda") return Theory::Lambda;
  if (s == "h" || s == "H") return Theory::H;
  if (s == "hstar" || s == "Hstar" || s == "H*") return Theory::HStar;
  throw std::invalid_argument("unknown theory '" + std::string(s) + "' (expected lambda, h or hstar)");
}

std::string to_string(VerdictKind v) {
  switch (v) {
    case VerdictKind::Equal: return "equal";
    case VerdictKind::NotEqual: return "not-equal";
    case VerdictKind::Unknown: return "unknown";
  }
  return "?";
}

const std::vector<Term>& context_pool() {
  static const std::vector<Term> pool = {
      Term::var("x"), Term::var("y"),      terms::id(),         terms::delta(),
      terms::omega(), parse("\\x.\\y.x"), parse("\\y.\\x.x"),
  };
  return pool;
}

namespace {

Position prepend(Edge e, const Position& p) {
  Position q;
  q.path.reserve(p.path.size() + 1);
  q.path.push_back(e);
  q.path.insert(q.path.end(), p.path.begin(), p.path.end());
  return q;
}

std::vector<Context> grow(const Context& c) {
  std::vector<Context> out;
  const auto& pool = context_pool();
  const Term& s = c.skeleton;
  for (const auto& p : pool) out.push_back({Term::app(s, p), prepend(Edge::AppFun, c.hole)});
  for (const auto& p : pool) out.push_back({Term::app(p, s), prepend(Edge::AppArg, c.hole)});
  for (const char* x : {"x", "y"}) out.push_back({Term::abs(x, s), prepend(Edge::AbsBody, c.hole)});
  for (const char* x : {"x", "y"})
    for (const auto& p : pool) out.push_back({Term::es(s, x, p), prepend(Edge::EsBody, c.hole)});
  for (const char* x : {"x", "y"})
    for (const auto& p : pool) out.push_back({Term::es(p, x, s), prepend(Edge::EsArg, c.hole)});
  return out;
}

// Level-omega trace from t; collects every term visited, first occurrence.
struct Walk {
  Trace trace;
  std::unordered_map<std::string, std::size_t> index;  // canonical key -> step count

  Walk(const Term& t, Calculus c, std::size_t fuel) : trace(normalize(t, c, Level::omega(), fuel)) {
    index.emplace(canonical_key(trace.initial), 0);
    for (std::size_t i = 0; i < trace.steps.size(); ++i) index.emplace(canonical_key(trace.steps[i].after), i + 1);
  }
  const Term& term_at(std::size_t i) const { return i == 0 ? trace.initial : trace.steps[i - 1].after; }
  std::size_t length() const { return trace.steps.size() + 1; }
  bool normal() const { return trace.outcome == Outcome::NormalForm; }
};

std::vector<Step> prefix(const Trace& t, std::size_t n) { return {t.steps.begin(), t.steps.begin() + n}; }

}  // namespace

std::vector<Context> enumerate_contexts(std::size_t max_size) {
  std::vector<Context> all{Context::empty()};
  std::size_t level_begin = 0;
  for (std::size_t s = 1; s <= max_size; ++s) {
    const std::size_t level_end = all.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      auto more = grow(all[i]);
      all.insert(all.end(), more.begin(), more.end());
    }
    level_begin = level_end;
  }
  return all;
}

std::optional<Falsification> falsify_observational(const Term& t, const Term& u, const Oracle& o,
                                                   std::size_t context_budget, std::size_t* tried) {
  if (alpha_eq(t, u)) {
    if (tried) *tried = 0;
    return std::nullopt;
  }
  const auto contexts = enumerate_contexts(context_budget);
  auto hit = parallel::first_distinguishing(contexts, t, u, o);
  if (tried) *tried = hit ? *hit + 1 : contexts.size();
  if (!hit) return std::nullopt;
  const Context& c = contexts[*hit];
  return Falsification{c, o.classify(c.plug(t)), o.classify(c.plug(u))};
}

Verdict judge(Theory th, const Term& t, const Term& u, const Oracle& o, JudgeBudgets b) {
  if (contains_bot(t) || contains_bot(u)) throw std::invalid_argument("judge expects ⊥-free terms");
  const Calculus c = o.calculus();
  Verdict v;
  v.theory = th;
  v.calculus = c;
  v.left = t;
  v.right = u;

  auto try_falsify = [&](const std::string& why) {
    v.falsification = falsify_observational(t, u, o, b.context_size, &v.contexts_tried);
    if (v.falsification) {
      v.kind = VerdictKind::NotEqual;
      v.justification = "context " + v.falsification->context.str() + " separates the two sides";
    } else {
      v.kind = VerdictKind::Unknown;
      v.justification = why + "; no separating context of size <= " + std::to_string(b.context_size) + " among " +
                        std::to_string(v.contexts_tried);
    }
  };

  // (a) common reduct
  const Walk wt(t, c, o.fuel()), wu(u, c, o.fuel());
  for (std::size_t j = 0; j < wu.length(); ++j) {
    auto it = wt.index.find(canonical_key(wu.term_at(j)));
    if (it == wt.index.end()) continue;
    v.kind = VerdictKind::Equal;
    v.rule = 'a';
    v.left_steps = prefix(wt.trace, it->second);
    v.right_steps = prefix(wu.trace, j);
    v.justification = "common reduct " + print(wu.term_at(j));
    return v;
  }

  const MeaningStatus st = o.status(t), su = o.status(u);
  const bool t_less = st.kind == Meaning::Meaningless, u_less = su.kind == Meaning::Meaningless;
  // (b) both meaningless
  if (t_less && u_less) {
    v.rule = 'b';
    v.left_status = st;
    v.right_status = su;
    if (th == Theory::Lambda) {
      v.kind = VerdictKind::Unknown;
      v.justification = "both sides meaningless; λ does not equate them by itself";
    } else {
      v.kind = VerdictKind::Equal;
      v.justification = "both sides meaningless";
    }
    return v;
  }
  // (c) distinct normal forms
  if (wt.normal() && wu.normal()) {
    v.rule = 'c';
    v.left_steps = wt.trace.steps;
    v.right_steps = wu.trace.steps;
    if (th == Theory::HStar) {
      try_falsify("distinct normal forms");
    } else {
      v.kind = VerdictKind::NotEqual;
      v.justification =
          "distinct normal forms " + print(wt.trace.final_term()) + " and " + print(wu.trace.final_term());
    }
    return v;
  }
  // (d) exactly one meaningless
  const bool t_ful = st.kind == Meaning::Meaningful, u_ful = su.kind == Meaning::Meaningful;
  if ((t_less && u_ful) || (t_ful && u_less)) {
    v.rule = 'd';
    v.left_status = st;
    v.right_status = su;
    if (th == Theory::Lambda) {
      v.kind = VerdictKind::Unknown;
      v.justification = "one side meaningless; no λ refutation";
    } else {
      v.kind = VerdictKind::NotEqual;
      v.falsification = Falsification{Context::empty(), st.kind, su.kind};
      v.justification = "the empty context separates a meaningful from a meaningless term";
    }
    return v;
  }
  // (e)
  v.rule = 'e';
  if (th == Theory::HStar) {
    try_falsify("no rule applies");
  } else {
    v.kind = VerdictKind::Unknown;
    v.justification = "no rule applies within the budget";
  }
  return v;
}

namespace {

std::optional<Term> replay(const Term& start, const std::vector<Step>& steps) {
  Term cur = start;
  for (const auto& s : steps) {
    if (!alpha_eq(s.before, cur)) return std::nullopt;
    if (!valid_position(cur, s.occurrence.position) || !matches(subterm_at(cur, s.occurrence.position), s.occurrence.rule))
      return std::nullopt;
    cur = apply_step(cur, s.occurrence);
    if (!alpha_eq(cur, s.after)) return std::nullopt;
  }
  return cur;
}

}  // namespace

bool verify_verdict(const Verdict& v, std::size_t fuel) {
  if (v.kind == VerdictKind::Unknown) return true;
  const Calculus c = v.calculus;
  switch (v.rule) {
    case 'a': {
      auto l = replay(v.left, v.left_steps), r = replay(v.right, v.right_steps);
      return l && r && alpha_eq(*l, *r) && v.kind == VerdictKind::Equal;
    }
    case 'b':
      return v.kind == VerdictKind::Equal && v.theory != Theory::Lambda &&
             meaning_status(v.left, c, fuel).kind == Meaning::Meaningless &&
             meaning_status(v.right, c, fuel).kind == Meaning::Meaningless;
    case 'c':
      if (v.kind != VerdictKind::NotEqual) return false;
      if (v.theory == Theory::HStar) break;
      {
        auto l = replay(v.left, v.left_steps), r = replay(v.right, v.right_steps);
        return l && r && is_normal(*l, c, Level::omega()) && is_normal(*r, c, Level::omega()) && !alpha_eq(*l, *r);
      }
    default: break;
  }
  if (v.kind != VerdictKind::NotEqual || !v.falsification || v.theory == Theory::Lambda) return false;
  const Context& ctx = v.falsification->context;
  const Meaning a = meaning_status(ctx.plug(v.left), c, fuel).kind;
  const Meaning b = meaning_status(ctx.plug(v.right), c, fuel).kind;
  return a != Meaning::Unknown && b != Meaning::Unknown && a != b;
}

nlohmann::json to_json(const Verdict& v) {
  auto steps = [](const std::vector<Step>& ss) {
    json a = json::array();
    for (const auto& s : ss) a.push_back(to_json(s));
    return a;
  };
  json j{{"theory", to_string(v.theory)},       {"calculus", to_string(v.calculus)},
         {"left", print(v.left)},               {"right", print(v.right)},
         {"verdict", to_string(v.kind)},        {"rule", std::string(1, v.rule)},
         {"justification", v.justification},    {"contexts_tried", v.contexts_tried}};
  if (!v.left_steps.empty() || !v.right_steps.empty() || v.rule == 'a' || v.rule == 'c') {
    j["left_steps"] = steps(v.left_steps);
    j["right_steps"] = steps(v.right_steps);
  }
  if (v.left_status) j["left_status"] = to_json(*v.left_status);
  if (v.right_status) j["right_status"] = to_json(*v.right_status);
  if (v.falsification)
    j["context"] = json{{"context", v.falsification->context.str()},
                        {"left_status", to_string(v.falsification->left)},
                        {"right_status", to_string(v.falsification->right)}};
  return j;
}

}  // namespace strata

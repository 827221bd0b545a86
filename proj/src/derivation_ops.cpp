#include <algorithm>
#include <functional>

#include "strata/normal_forms.hpp"
#include "strata/types.hpp"

namespace strata {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw DerivationError(msg);
}

std::vector<Derivation> arg_premises(const Derivation& d) { return {d.premises.begin() + 1, d.premises.end()}; }

// Rebuilds d along target, a term with the same shape as d.term. Names come
// from target; the hook may take over any node (return nullopt to decline).
using Hook = std::function<std::optional<Derivation>(const Derivation&, const Term&)>;

Derivation rebuild_along(const Derivation& d, const Term& target, const Hook& hook) {
  if (hook) {
    if (auto r = hook(d, target)) return std::move(*r);
  }
  require(d.term.kind() == target.kind(), "derivation does not follow the term structure");
  TypeSystem s = d.system;
  switch (d.rule) {
    case TyRule::Var: return mk_var(s, target.name(), d.type);
    case TyRule::Abs: {
      std::vector<Derivation> ps;
      for (const auto& p : d.premises) ps.push_back(rebuild_along(p, target.body(), hook));
      return mk_abs(s, target.name(), target.body(), std::move(ps));
    }
    case TyRule::App: {
      Derivation f = rebuild_along(d.premises[0], target.fun(), hook);
      std::vector<Derivation> as;
      for (std::size_t i = 1; i < d.premises.size(); ++i) as.push_back(rebuild_along(d.premises[i], target.arg(), hook));
      return mk_app(s, std::move(f), target.arg(), std::move(as));
    }
    case TyRule::Es: {
      Derivation b = rebuild_along(d.premises[0], target.body(), hook);
      std::vector<Derivation> as;
      for (std::size_t i = 1; i < d.premises.size(); ++i) as.push_back(rebuild_along(d.premises[i], target.arg(), hook));
      return mk_es(s, std::move(b), target.name(), target.arg(), std::move(as));
    }
  }
  throw DerivationError("unknown rule");
}

// Replace the derivation node at position p using fn; ancestors are rebuilt.
// Only positions reached through a single premise are supported.
Derivation at_position(const Derivation& d, const std::vector<Edge>& path, std::size_t i,
                       const std::function<Derivation(const Derivation&)>& fn) {
  if (i == path.size()) return fn(d);
  Edge e = path[i];
  TypeSystem s = d.system;
  auto only = [&](std::size_t from) {
    require(d.premises.size() == from + 1, "position is not reached by exactly one premise");
    return at_position(d.premises[from], path, i + 1, fn);
  };
  switch (e) {
    case Edge::AbsBody: {
      require(d.rule == TyRule::Abs, "shape mismatch");
      Derivation b = only(0);
      Term body = b.term;
      return mk_abs(s, d.term.name(), body, {std::move(b)});
    }
    case Edge::AppFun: {
      require(d.rule == TyRule::App, "shape mismatch");
      Derivation f = at_position(d.premises[0], path, i + 1, fn);
      return mk_app(s, std::move(f), d.term.arg(), arg_premises(d));
    }
    case Edge::AppArg: {
      require(d.rule == TyRule::App, "shape mismatch");
      Derivation a = only(1);
      Term arg = a.term;
      return mk_app(s, d.premises[0], arg, {std::move(a)});
    }
    case Edge::EsBody: {
      require(d.rule == TyRule::Es, "shape mismatch");
      Derivation b = at_position(d.premises[0], path, i + 1, fn);
      return mk_es(s, std::move(b), d.term.name(), d.term.arg(), arg_premises(d));
    }
    case Edge::EsArg: {
      require(d.rule == TyRule::Es, "shape mismatch");
      Derivation a = only(1);
      Term arg = a.term;
      return mk_es(s, d.premises[0], d.term.name(), arg, {std::move(a)});
    }
  }
  throw DerivationError("bad edge");
}

struct ListLayer {
  std::vector<Derivation> args;
};

// Descend n ES layers; returns the layers' argument premises and the inner node.
const Derivation& peel_layers(const Derivation& d, std::size_t n, std::vector<ListLayer>& layers) {
  const Derivation* cur = &d;
  for (std::size_t i = 0; i < n; ++i) {
    require(cur->rule == TyRule::Es, "list context expected in the derivation");
    layers.push_back({arg_premises(*cur)});
    cur = &cur->premises[0];
  }
  return *cur;
}

// Wrap inner in the list context described by decomposition d (outermost
// first), rebuilding the argument premises along the decomposition's terms.
Derivation wrap_layers(TypeSystem s, Derivation inner, const Decomposition& dec, const std::vector<ListLayer>& layers) {
  for (std::size_t i = dec.list.size(); i-- > 0;) {
    const auto& [y, arg] = dec.list[i];
    std::vector<Derivation> as;
    for (const auto& a : layers[i].args) as.push_back(rebuild_along(a, arg, nullptr));
    inner = mk_es(s, std::move(inner), y, arg, std::move(as));
  }
  return inner;
}

// Free occurrences of x in the typed part of d, in traversal order.
void axiom_types(const Derivation& d, const std::string& x, std::vector<Ty>& out) {
  if (!d.term.has_free(x)) return;
  if (d.rule == TyRule::Var) {
    out.push_back(d.type);
    return;
  }
  bool shadows = (d.rule == TyRule::Abs || d.rule == TyRule::Es) && d.term.name() == x;
  for (std::size_t i = 0; i < d.premises.size(); ++i) {
    bool body = d.rule == TyRule::Abs || (d.rule == TyRule::Es && i == 0);
    if (body && shadows) continue;
    axiom_types(d.premises[i], x, out);
  }
}

// Rebuild t's derivation along target = subst(t, x, value), plugging pieces
// (derivations of the substituted term) into the axioms for x.
Derivation substitute(const Derivation& d, const std::string& x, const Term& target, std::vector<Derivation>& pieces) {
  Hook hook;
  hook = [&](const Derivation& n, const Term& tgt) -> std::optional<Derivation> {
    if (n.rule == TyRule::Var && n.term.name() == x) {
      auto it = std::find_if(pieces.begin(), pieces.end(), [&](const Derivation& p) { return p.type == n.type; });
      require(it != pieces.end(), "no derivation piece of type " + n.type.str());
      Derivation p = rebuild_along(*it, tgt, nullptr);
      pieces.erase(it);
      return p;
    }
    if ((n.rule == TyRule::Abs || n.rule == TyRule::Es) && n.term.name() == x) {
      // x is shadowed in the body.
      if (n.rule == TyRule::Abs) return rebuild_along(n, tgt, nullptr);
      Derivation b = rebuild_along(n.premises[0], tgt.body(), nullptr);
      std::vector<Derivation> as;
      for (std::size_t i = 1; i < n.premises.size(); ++i) as.push_back(rebuild_along(n.premises[i], tgt.arg(), hook));
      return mk_es(n.system, std::move(b), tgt.name(), tgt.arg(), std::move(as));
    }
    return std::nullopt;
  };
  return rebuild_along(d, target, hook);
}

// Inverse of substitute: d derives subst(t, x, value) (name-exact); returns
// a derivation of t with axioms for x, collecting the removed pieces.
Derivation anti_substitute(const Derivation& d, const Term& t, const std::string& x, std::vector<Derivation>& pieces) {
  if (!t.has_free(x)) return rebuild_along(d, t, nullptr);
  TypeSystem s = d.system;
  switch (t.kind()) {
    case Kind::Var: {
      pieces.push_back(d);
      return mk_var(s, x, d.type);
    }
    case Kind::Abs: {
      require(d.rule == TyRule::Abs, "derivation does not follow the term structure");
      std::vector<Derivation> ps;
      for (const auto& p : d.premises) ps.push_back(anti_substitute(p, t.body(), x, pieces));
      return mk_abs(s, t.name(), t.body(), std::move(ps));
    }
    case Kind::App: {
      require(d.rule == TyRule::App, "derivation does not follow the term structure");
      Derivation f = anti_substitute(d.premises[0], t.fun(), x, pieces);
      std::vector<Derivation> as;
      for (std::size_t i = 1; i < d.premises.size(); ++i) as.push_back(anti_substitute(d.premises[i], t.arg(), x, pieces));
      return mk_app(s, std::move(f), t.arg(), std::move(as));
    }
    case Kind::Es: {
      require(d.rule == TyRule::Es, "derivation does not follow the term structure");
      Derivation b = t.name() == x ? rebuild_along(d.premises[0], t.body(), nullptr)
                                   : anti_substitute(d.premises[0], t.body(), x, pieces);
      std::vector<Derivation> as;
      for (std::size_t i = 1; i < d.premises.size(); ++i) as.push_back(anti_substitute(d.premises[i], t.arg(), x, pieces));
      return mk_es(s, std::move(b), t.name(), t.arg(), std::move(as));
    }
    case Kind::Bot: break;
  }
  throw DerivationError("unexpected bot");
}

// Split a V-derivation of a value into one piece per demanded multiset.
std::vector<Derivation> split_value(const Derivation& v, const std::vector<Ty>& demands) {
  std::vector<Derivation> out;
  if (v.rule == TyRule::Var) {
    Ty total = Ty::empty();
    for (const auto& m : demands) {
      total = total.plus(m);
      out.push_back(mk_var(TypeSystem::V, v.term.name(), m));
    }
    require(total == v.type, "value type does not split into the demanded multisets");
    return out;
  }
  require(v.rule == TyRule::Abs, "value derivation expected");
  std::vector<bool> used(v.premises.size(), false);
  const std::string& z = v.term.name();
  for (const auto& m : demands) {
    std::vector<Derivation> sel;
    for (const Ty& want : m.items()) {
      bool found = false;
      for (std::size_t i = 0; i < v.premises.size() && !found; ++i) {
        if (used[i]) continue;
        if (Ty::arrow(v.premises[i].ctx.at(z), v.premises[i].type) == want) {
          used[i] = true;
          sel.push_back(v.premises[i]);
          found = true;
        }
      }
      require(found, "value type does not split into the demanded multisets");
    }
    out.push_back(mk_abs(TypeSystem::V, z, v.term.body(), std::move(sel)));
  }
  require(std::all_of(used.begin(), used.end(), [](bool b) { return b; }), "unused premises in value derivation");
  return out;
}

Derivation merge_value(const Term& v, const std::vector<Derivation>& pieces) {
  if (v.is(Kind::Var)) {
    Ty total = Ty::empty();
    for (const auto& p : pieces) total = total.plus(p.type);
    return mk_var(TypeSystem::V, v.name(), total);
  }
  std::vector<Derivation> ps;
  for (const auto& p : pieces)
    for (const auto& q : p.premises) ps.push_back(q);
  return mk_abs(TypeSystem::V, v.name(), v.body(), std::move(ps));
}

Derivation contract_node(const Derivation& node, Rule rule) {
  TypeSystem s = node.system;
  Decomposition dec = decompose_hygienic(node.term, rule);
  switch (rule) {
    case Rule::DB: {
      std::vector<ListLayer> layers;
      const Derivation& ab = peel_layers(node.premises[0], dec.list.size(), layers);
      require(ab.rule == TyRule::Abs && ab.premises.size() == 1, "dB: abstraction with one premise expected");
      Derivation body = rebuild_along(ab.premises[0], dec.core.body(), nullptr);
      Derivation inner = mk_es(s, std::move(body), dec.core.name(), dec.other, arg_premises(node));
      return wrap_layers(s, std::move(inner), dec, layers);
    }
    case Rule::SV: {
      std::vector<ListLayer> layers;
      const Derivation& val = peel_layers(node.premises[1], dec.list.size(), layers);
      std::vector<Ty> demands;
      axiom_types(node.premises[0], dec.var, demands);
      std::vector<Derivation> pieces = split_value(val, demands);
      Derivation inner = substitute(node.premises[0], dec.var, subst(dec.other, dec.var, dec.core), pieces);
      require(pieces.empty(), "sv: leftover value pieces");
      return wrap_layers(s, std::move(inner), dec, layers);
    }
    case Rule::SN: {
      std::vector<Derivation> pieces = arg_premises(node);
      Derivation r = substitute(node.premises[0], dec.var, subst(dec.other, dec.var, dec.core), pieces);
      require(pieces.empty(), "sN: leftover argument premises");
      return r;
    }
    case Rule::BetaV: break;
  }
  throw DerivationError("rule not supported by the type systems");
}

Derivation expand_node(const Derivation& node, const Term& redex, Rule rule) {
  TypeSystem s = node.system;
  Decomposition dec = decompose_hygienic(redex, rule);
  switch (rule) {
    case Rule::DB: {
      std::vector<ListLayer> layers;
      const Derivation& es = peel_layers(node, dec.list.size(), layers);
      require(es.rule == TyRule::Es, "dB expansion: closure expected");
      Derivation ab = mk_abs(s, dec.core.name(), dec.core.body(),
                             {rebuild_along(es.premises[0], dec.core.body(), nullptr)});
      Derivation fun = wrap_layers(s, std::move(ab), dec, layers);
      std::vector<Derivation> as;
      for (const auto& a : arg_premises(es)) as.push_back(rebuild_along(a, dec.other, nullptr));
      return mk_app(s, std::move(fun), dec.other, std::move(as));
    }
    case Rule::SV: {
      std::vector<ListLayer> layers;
      const Derivation& inner = peel_layers(node, dec.list.size(), layers);
      std::vector<Derivation> pieces;
      Derivation body = anti_substitute(inner, dec.other, dec.var, pieces);
      Derivation val = wrap_layers(s, merge_value(dec.core, pieces), dec, layers);
      Term arg = val.term;
      return mk_es(s, std::move(body), dec.var, arg, {std::move(val)});
    }
    case Rule::SN: {
      std::vector<Derivation> pieces;
      Derivation body = anti_substitute(node, dec.other, dec.var, pieces);
      return mk_es(s, std::move(body), dec.var, dec.core, std::move(pieces));
    }
    case Rule::BetaV: break;
  }
  throw DerivationError("rule not supported by the type systems");
}

void check_step_shape(const Derivation& d, const Step& step) {
  require(step.level_required == 0, "derivations are transported along level-0 steps only");
  require((d.system == TypeSystem::V) == (step.calculus == Calculus::CbV), "type system does not match the calculus");
}

}  // namespace

Derivation align_to(const Derivation& d, const Term& target) {
  require(alpha_eq(d.term, target), "derivation conclusion is not alpha-equal to the target term");
  return rebuild_along(d, target, nullptr);
}

Derivation rename_free(const Derivation& d, const std::string& from, const std::string& to) {
  return rebuild_along(d, subst(d.term, from, Term::var(to)), nullptr);
}

Derivation reduce_derivation(const Derivation& d, const Step& step) {
  check_step_shape(d, step);
  Derivation base = align_to(d, step.before);
  Derivation r = at_position(base, step.occurrence.position.path, 0,
                             [&](const Derivation& n) { return contract_node(n, step.occurrence.rule); });
  r = align_to(r, step.after);
  require(r.ctx == d.ctx && r.type == d.type, "subject reduction changed the judgment");
  return r;
}

Derivation expand_derivation(const Derivation& d, const Step& step) {
  check_step_shape(d, step);
  Derivation base = align_to(d, step.after);
  const Term& redex = subterm_at(step.before, step.occurrence.position);
  Derivation r = at_position(base, step.occurrence.position.path, 0,
                             [&](const Derivation& n) { return expand_node(n, redex, step.occurrence.rule); });
  r = align_to(r, step.before);
  require(r.ctx == d.ctx && r.type == d.type, "subject expansion changed the judgment");
  return r;
}

namespace {

Derivation replace_hole(const Derivation& d, const std::vector<Edge>& path, std::size_t i, const Term& u) {
  if (i == path.size()) throw HoleContradiction("the hole is typed: the plugged term cannot be meaningless");
  TypeSystem s = d.system;
  Position rest;
  rest.path.assign(path.begin() + static_cast<std::ptrdiff_t>(i) + 1, path.end());
  switch (path[i]) {
    case Edge::AbsBody: {
      std::vector<Derivation> ps;
      for (const auto& p : d.premises) ps.push_back(replace_hole(p, path, i + 1, u));
      return mk_abs(s, d.term.name(), replace_at(d.term.body(), rest, u), std::move(ps));
    }
    case Edge::AppFun:
      return mk_app(s, replace_hole(d.premises[0], path, i + 1, u), d.term.arg(), arg_premises(d));
    case Edge::AppArg: {
      std::vector<Derivation> as;
      for (std::size_t k = 1; k < d.premises.size(); ++k) as.push_back(replace_hole(d.premises[k], path, i + 1, u));
      return mk_app(s, d.premises[0], replace_at(d.term.arg(), rest, u), std::move(as));
    }
    case Edge::EsBody:
      return mk_es(s, replace_hole(d.premises[0], path, i + 1, u), d.term.name(), d.term.arg(), arg_premises(d));
    case Edge::EsArg: {
      std::vector<Derivation> as;
      for (std::size_t k = 1; k < d.premises.size(); ++k) as.push_back(replace_hole(d.premises[k], path, i + 1, u));
      return mk_es(s, d.premises[0], d.term.name(), replace_at(d.term.arg(), rest, u), std::move(as));
    }
  }
  throw DerivationError("bad edge");
}

}  // namespace

Derivation typed_genericity(const Derivation& d, const Context& c, const Term& t, const Term& u, const Oracle& o) {
  switch (o.classify(t)) {
    case Meaning::Unknown: throw UndeterminedError("meaningfulness of the plugged term is undetermined", t);
    case Meaning::Meaningful: throw std::invalid_argument("typed_genericity expects a meaningless plugged term");
    case Meaning::Meaningless: break;
  }
  require((d.system == TypeSystem::V) == (o.calculus() == Calculus::CbV), "type system does not match the calculus");
  Term whole = c.plug(t);
  require(d.term == whole, "derivation conclusion must be name-identical to the plugged context");
  return replace_hole(d, c.hole.path, 0, u);
}

TypabilityResult typable(const Term& t, Calculus c, std::size_t fuel) {
  if (t.contains_bot()) throw std::invalid_argument("typable expects a term without bot");
  Trace tr = normalize(t, c, Level::fin(0), fuel);
  TypabilityResult r;
  switch (tr.outcome) {
    case Outcome::Cycle: r.kind = Typability::Untypable; return r;
    case Outcome::FuelExhausted: r.kind = Typability::Undetermined; return r;
    case Outcome::NormalForm: break;
  }
  Derivation d = synth_nf_derivation(tr.final_term(), system_for(c));
  for (auto it = tr.steps.rbegin(); it != tr.steps.rend(); ++it) d = expand_derivation(d, *it);
  r.kind = Typability::Typed;
  r.derivation = align_to(d, t);
  return r;
}

}  // namespace strata

#include "reference.hpp"

#include <deque>
#include <functional>
#include <unordered_set>

namespace ref {

namespace {

Tm mk(char k, Tm a = nullptr, Tm b = nullptr) {
  auto n = std::make_shared<Node>();
  n->kind = k;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}
Tm bvar(int i) {
  auto n = std::make_shared<Node>();
  n->kind = 'v';
  n->index = i;
  return n;
}
Tm fvar(const std::string& x) {
  auto n = std::make_shared<Node>();
  n->kind = 'f';
  n->name = x;
  return n;
}

Tm convert(const strata::Term& t, std::vector<std::string>& env) {
  using strata::Kind;
  switch (t.kind()) {
    case Kind::Bot: return mk('b');
    case Kind::Var:
      for (int i = static_cast<int>(env.size()) - 1; i >= 0; --i)
        if (env[i] == t.name()) return bvar(static_cast<int>(env.size()) - 1 - i);
      return fvar(t.name());
    case Kind::Abs: {
      env.push_back(t.name());
      Tm body = convert(t.body(), env);
      env.pop_back();
      return mk('l', body);
    }
    case Kind::App: return mk('a', convert(t.fun(), env), convert(t.arg(), env));
    case Kind::Es: {
      Tm arg = convert(t.arg(), env);
      env.push_back(t.name());
      Tm body = convert(t.body(), env);
      env.pop_back();
      return mk('e', body, arg);
    }
  }
  return nullptr;
}

Tm shift(const Tm& t, int d, int cutoff) {
  switch (t->kind) {
    case 'v': return t->index >= cutoff ? bvar(t->index + d) : t;
    case 'f':
    case 'b': return t;
    case 'l': return mk('l', shift(t->a, d, cutoff + 1));
    case 'a': return mk('a', shift(t->a, d, cutoff), shift(t->b, d, cutoff));
    case 'e': return mk('e', shift(t->a, d, cutoff + 1), shift(t->b, d, cutoff));
  }
  return t;
}

// Replace index j by s (s already valid at the binder depth of j).
Tm subst(const Tm& t, int j, const Tm& s) {
  switch (t->kind) {
    case 'v': return t->index == j ? s : t;
    case 'f':
    case 'b': return t;
    case 'l': return mk('l', subst(t->a, j + 1, shift(s, 1, 0)));
    case 'a': return mk('a', subst(t->a, j, s), subst(t->b, j, s));
    case 'e': return mk('e', subst(t->a, j + 1, shift(s, 1, 0)), subst(t->b, j, s));
  }
  return t;
}

// Body of a binder with index 0 instantiated by s.
Tm beta(const Tm& body, const Tm& s) { return shift(subst(body, 0, shift(s, 1, 0)), -1, 0); }

// ES spine: t = Es(...Es(core, a1)..., an), returns core and args innermost first.
const Tm& spine(const Tm& t, std::vector<Tm>& args) {
  if (t->kind == 'e') {
    const Tm& c = spine(t->a, args);
    args.push_back(t->b);
    return c;
  }
  return t;
}

Tm wrap(Tm core, const std::vector<Tm>& args) {
  for (const auto& a : args) core = mk('e', core, a);
  return core;
}

void root_reducts(const Tm& t, bool cbv, std::vector<Tm>& out) {
  if (t->kind == 'a') {
    std::vector<Tm> args;
    const Tm& core = spine(t->a, args);
    if (core->kind == 'l') {
      const int n = static_cast<int>(args.size());
      out.push_back(wrap(mk('e', core->a, shift(t->b, n, 0)), args));
    }
  }
  if (t->kind == 'e') {
    if (cbv) {
      std::vector<Tm> args;
      const Tm& v = spine(t->b, args);
      if (v->kind == 'l' || v->kind == 'v' || v->kind == 'f') {
        const int n = static_cast<int>(args.size());
        out.push_back(wrap(beta(shift(t->a, n, 1), v), args));
      }
    } else {
      out.push_back(beta(t->a, t->b));
    }
  }
}

void collect(const Tm& t, bool cbv, int k, int depth, std::vector<Tm>& out) {
  if (k >= 0 && depth > k) return;
  root_reducts(t, cbv, out);
  switch (t->kind) {
    case 'l': {
      std::vector<Tm> sub;
      collect(t->a, cbv, k, depth + (cbv ? 1 : 0), sub);
      for (auto& s : sub) out.push_back(mk('l', s));
      break;
    }
    case 'a': {
      std::vector<Tm> sub;
      collect(t->a, cbv, k, depth, sub);
      for (auto& s : sub) out.push_back(mk('a', s, t->b));
      sub.clear();
      collect(t->b, cbv, k, depth + (cbv ? 0 : 1), sub);
      for (auto& s : sub) out.push_back(mk('a', t->a, s));
      break;
    }
    case 'e': {
      std::vector<Tm> sub;
      collect(t->a, cbv, k, depth, sub);
      for (auto& s : sub) out.push_back(mk('e', s, t->b));
      sub.clear();
      collect(t->b, cbv, k, depth + (cbv ? 0 : 1), sub);
      for (auto& s : sub) out.push_back(mk('e', t->a, s));
      break;
    }
    default: break;
  }
}

void keyrec(const Tm& t, std::string& s) {
  switch (t->kind) {
    case 'v': s += '#' + std::to_string(t->index); break;
    case 'f': s += '$' + t->name + ';'; break;
    case 'b': s += '_'; break;
    case 'l': s += 'L'; keyrec(t->a, s); break;
    case 'a': s += 'A'; keyrec(t->a, s); keyrec(t->b, s); break;
    case 'e': s += 'E'; keyrec(t->a, s); keyrec(t->b, s); break;
  }
}

}  // namespace

Tm from_term(const strata::Term& t) {
  std::vector<std::string> env;
  return convert(t, env);
}

std::string key(const Tm& t) {
  std::string s;
  keyrec(t, s);
  return s;
}

std::vector<Tm> reducts(const Tm& t, bool cbv, int k) {
  std::vector<Tm> out;
  collect(t, cbv, k, 0, out);
  return out;
}

Verdict explore(const Tm& t, bool cbv, std::size_t node_cap) {
  std::unordered_set<std::string> seen{key(t)};
  std::deque<Tm> todo{t};
  while (!todo.empty()) {
    Tm cur = todo.front();
    todo.pop_front();
    auto next = reducts(cur, cbv, 0);
    if (next.empty()) return Verdict::Meaningful;
    for (auto& n : next)
      if (seen.insert(key(n)).second) {
        if (seen.size() > node_cap) return Verdict::Unknown;
        todo.push_back(std::move(n));
      }
  }
  return Verdict::Meaningless;
}

}  // namespace ref

#include "strata/normal_forms.hpp"

#include <stdexcept>
#include <utility>
#include <vector>

namespace strata {

std::string to_string(NfClass c) {
  switch (c) {
    case NfClass::No: return "no";
    case NfClass::Ne: return "ne";
    case NfClass::Vr: return "vr";
    case NfClass::NotNf: return "not-normal";
  }
  return "?";
}

namespace {

// The no/ne/vr grammars. ⊥ has no production, so the same recognisers serve
// the ⊥-aware bno grammars: ⊥ may only hide where a production accepts an
// arbitrary term.
namespace cbv {

bool vr(const Term& t, Level k);
bool ne(const Term& t, Level k);
bool no(const Term& t, Level k);

bool vr(const Term& t, Level k) {
  if (t.is(Kind::Var)) return true;
  return t.is(Kind::Es) && vr(t.body(), k) && ne(t.arg(), k);
}

bool ne(const Term& t, Level k) {
  if (t.is(Kind::App)) return (vr(t.fun(), k) || ne(t.fun(), k)) && no(t.arg(), k);
  if (t.is(Kind::Es)) return ne(t.body(), k) && ne(t.arg(), k);
  return false;
}

bool no(const Term& t, Level k) {
  switch (t.kind()) {
    case Kind::Var: return true;
    case Kind::Abs: return k == Level::fin(0) || no(t.body(), k.pred());
    case Kind::App: return ne(t, k);
    case Kind::Es: return no(t.body(), k) && ne(t.arg(), k);
    case Kind::Bot: return false;
  }
  return false;
}

}  // namespace cbv

namespace cbn {

bool no(const Term& t, Level k);

bool ne(const Term& t, Level k) {
  if (t.is(Kind::Var)) return true;
  if (!t.is(Kind::App)) return false;
  if (!ne(t.fun(), k)) return false;
  if (k == Level::fin(0)) return true;
  return no(t.arg(), k.pred());
}

bool no(const Term& t, Level k) {
  if (t.is(Kind::Abs)) return no(t.body(), k);
  return ne(t, k);
}

}  // namespace cbn

}  // namespace

NfClass classify_nf(const Term& t, Calculus c, Level k) {
  if (t.contains_bot()) throw std::invalid_argument("classify_nf expects a term without bot");
  if (c == Calculus::CbV) {
    if (cbv::vr(t, k)) return NfClass::Vr;
    if (cbv::ne(t, k)) return NfClass::Ne;
    if (cbv::no(t, k)) return NfClass::No;
    return NfClass::NotNf;
  }
  if (cbn::ne(t, k)) return NfClass::Ne;
  if (cbn::no(t, k)) return NfClass::No;
  return NfClass::NotNf;
}

bool is_bno(const Term& t, Calculus c, Level k) {
  return c == Calculus::CbV ? cbv::no(t, k) : cbn::no(t, k);
}

namespace {

struct EqWalker {
  Calculus c;
  std::vector<std::pair<const std::string*, const std::string*>> env;

  bool vars_match(const std::string& a, const std::string& b) const {
    for (auto it = env.rbegin(); it != env.rend(); ++it) {
      bool ha = *it->first == a, hb = *it->second == b;
      if (ha || hb) return ha && hb;
    }
    return a == b;
  }

  bool under(const std::string& a, const std::string& b, const Term& t, const Term& u, Level k) {
    env.emplace_back(&a, &b);
    bool r = eq(t, u, k);
    env.pop_back();
    return r;
  }

  // Argument comparison for CbN: skipped at level 0.
  bool arg_eq(const Term& t, const Term& u, Level k) { return k == Level::fin(0) || eq(t, u, k.pred()); }

  bool eq(const Term& t, const Term& u, Level k) {
    if (t.kind() != u.kind()) return false;
    switch (t.kind()) {
      case Kind::Bot: return true;
      case Kind::Var: return vars_match(t.name(), u.name());
      case Kind::Abs:
        if (c == Calculus::CbN) return under(t.name(), u.name(), t.body(), u.body(), k);
        if (k == Level::fin(0)) return true;
        return under(t.name(), u.name(), t.body(), u.body(), k.pred());
      case Kind::App:
        if (c == Calculus::CbV) return eq(t.fun(), u.fun(), k) && eq(t.arg(), u.arg(), k);
        return eq(t.fun(), u.fun(), k) && arg_eq(t.arg(), u.arg(), k);
      case Kind::Es:
        if (c == Calculus::CbV)
          return eq(t.arg(), u.arg(), k) && under(t.name(), u.name(), t.body(), u.body(), k);
        return arg_eq(t.arg(), u.arg(), k) && under(t.name(), u.name(), t.body(), u.body(), k);
    }
    return false;
  }
};

}  // namespace

bool strat_eq(const Term& t, const Term& u, Calculus c, Level k) {
  EqWalker w{c, {}};
  return w.eq(t, u, k);
}

}  // namespace strata

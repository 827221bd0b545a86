#include "strata/types.hpp"

#include <algorithm>

#include "strata/normal_forms.hpp"

namespace strata {

std::string to_string(TypeSystem s) { return s == TypeSystem::V ? "V" : "N"; }
TypeSystem system_for(Calculus c) { return c == Calculus::CbV ? TypeSystem::V : TypeSystem::N; }

std::string to_string(TyRule r) {
  switch (r) {
    case TyRule::Var: return "var";
    case TyRule::Abs: return "abs";
    case TyRule::App: return "app";
    case TyRule::Es: return "es";
  }
  return "?";
}

TyRule parse_ty_rule(std::string_view s) {
  if (s == "var") return TyRule::Var;
  if (s == "abs") return TyRule::Abs;
  if (s == "app") return TyRule::App;
  if (s == "es") return TyRule::Es;
  throw std::invalid_argument("unknown typing rule '" + std::string(s) + "'");
}

std::string to_string(Typability t) {
  switch (t) {
    case Typability::Typed: return "typed";
    case Typability::Untypable: return "untypable";
    case Typability::Undetermined: return "undetermined";
  }
  return "?";
}

// ---- Ty -------------------------------------------------------------------

Ty Ty::var(std::string name) {
  Ty t;
  t.kind_ = Kind::Var;
  t.name_ = std::move(name);
  return t;
}

Ty Ty::mult(std::vector<Ty> items) {
  Ty t;
  t.kind_ = Kind::Mult;
  std::sort(items.begin(), items.end());
  t.items_ = std::move(items);
  return t;
}

Ty Ty::arrow(Ty source, Ty target) {
  if (!source.is(Kind::Mult)) throw std::invalid_argument("arrow source must be a multiset");
  Ty t;
  t.kind_ = Kind::Arrow;
  t.items_ = std::move(source.items_);
  t.target_ = std::make_shared<const Ty>(std::move(target));
  return t;
}

Ty Ty::source() const {
  if (kind_ != Kind::Arrow) throw std::logic_error("source of a non-arrow type");
  return mult(items_);
}

const Ty& Ty::target() const {
  if (kind_ != Kind::Arrow) throw std::logic_error("target of a non-arrow type");
  return *target_;
}

Ty Ty::plus(const Ty& other) const {
  if (kind_ != Kind::Mult || !other.is(Kind::Mult)) throw std::logic_error("multiset union of non-multisets");
  std::vector<Ty> all = items_;
  all.insert(all.end(), other.items_.begin(), other.items_.end());
  return mult(std::move(all));
}

bool operator==(const Ty& a, const Ty& b) { return (a <=> b) == 0; }

std::strong_ordering operator<=>(const Ty& a, const Ty& b) {
  if (a.kind_ != b.kind_) return a.kind_ <=> b.kind_;
  if (a.kind_ == Ty::Kind::Var) return a.name_ <=> b.name_;
  if (auto c = std::lexicographical_compare_three_way(a.items_.begin(), a.items_.end(), b.items_.begin(),
                                                      b.items_.end());
      c != 0)
    return c;
  if (a.kind_ == Ty::Kind::Arrow) return *a.target_ <=> *b.target_;
  return std::strong_ordering::equal;
}

std::string Ty::str() const {
  switch (kind_) {
    case Kind::Var: return name_;
    case Kind::Mult:
    case Kind::Arrow: {
      std::string s = "[";
      for (std::size_t i = 0; i < items_.size(); ++i) {
        if (i) s += ", ";
        s += items_[i].str();
      }
      s += "]";
      if (kind_ == Kind::Arrow) s += " -> " + target_->str();
      return s;
    }
  }
  return "?";
}

namespace {

class TypeParser {
 public:
  explicit TypeParser(std::string_view s) : s_(s) {}

  Ty all() {
    Ty t = type();
    ws();
    if (pos_ != s_.size()) throw ParseError("unexpected trailing input in type", pos_);
    return t;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;

  void ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool arrow_next() {
    ws();
    if (s_.substr(pos_, 2) == "->") {
      pos_ += 2;
      return true;
    }
    if (s_.substr(pos_, 3) == "\xE2\x86\x92") {  // UTF-8 arrow
      pos_ += 3;
      return true;
    }
    return false;
  }

  Ty type() {
    ws();
    if (pos_ < s_.size() && s_[pos_] == '[') {
      Ty m = multiset();
      if (arrow_next()) return Ty::arrow(std::move(m), type());
      return m;
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_' ||
                                s_[pos_] == '\''))
      ++pos_;
    if (start == pos_) throw ParseError("expected type", pos_);
    return Ty::var(std::string(s_.substr(start, pos_ - start)));
  }

  Ty multiset() {
    ++pos_;  // '['
    std::vector<Ty> items;
    ws();
    if (pos_ < s_.size() && s_[pos_] == ']') {
      ++pos_;
      return Ty::mult({});
    }
    while (true) {
      items.push_back(type());
      ws();
      if (pos_ >= s_.size()) throw ParseError("unterminated multiset", pos_);
      if (s_[pos_] == ',') {
        ++pos_;
        continue;
      }
      if (s_[pos_] == ']') {
        ++pos_;
        return Ty::mult(std::move(items));
      }
      throw ParseError("expected ',' or ']'", pos_);
    }
  }
};

}  // namespace

Ty parse_type(std::string_view text) { return TypeParser(text).all(); }

// ---- Contexts ---------------------------------------------------------------

const Ty& TypingCtx::at(const std::string& x) const {
  static const Ty empty = Ty::empty();
  auto it = entries_.find(x);
  return it == entries_.end() ? empty : it->second;
}

void TypingCtx::add(const std::string& x, const Ty& m) {
  if (!m.is(Ty::Kind::Mult)) throw std::invalid_argument("context entries must be multisets");
  if (m.items().empty()) return;
  auto it = entries_.find(x);
  if (it == entries_.end()) entries_.emplace(x, m);
  else it->second = it->second.plus(m);
}

TypingCtx TypingCtx::without(const std::string& x) const {
  TypingCtx c = *this;
  c.entries_.erase(x);
  return c;
}

TypingCtx TypingCtx::plus(const TypingCtx& o) const {
  TypingCtx c = *this;
  for (const auto& [x, m] : o.entries_) c.add(x, m);
  return c;
}

std::string TypingCtx::str() const {
  std::string s;
  for (const auto& [x, m] : entries_) {
    if (!s.empty()) s += ", ";
    s += x + ":" + m.str();
  }
  return s;
}

std::string Derivation::judgment() const {
  return ctx.str() + " |- " + print_raw(term) + " : " + type.str();
}

std::size_t Derivation::size() const {
  std::size_t n = 1;
  for (const auto& p : premises) n += p.size();
  return n;
}

// ---- Rule constructors -------------------------------------------------------

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw DerivationError(msg);
}

void same_system(TypeSystem s, const std::vector<Derivation>& ps) {
  for (const auto& p : ps) require(p.system == s, "premise from a different type system");
}

bool is_judgment_type(TypeSystem s, const Ty& t) { return s == TypeSystem::V || !t.is(Ty::Kind::Mult); }

}  // namespace

Derivation mk_var(TypeSystem s, const std::string& x, const Ty& type) {
  Derivation d;
  d.system = s;
  d.rule = TyRule::Var;
  d.term = Term::var(x);
  d.type = type;
  if (s == TypeSystem::V) {
    require(type.is(Ty::Kind::Mult), "var: V types a variable with a multiset");
    d.ctx.add(x, type);
  } else {
    require(!type.is(Ty::Kind::Mult), "var: N types a variable with a non-multiset type");
    d.ctx.add(x, Ty::mult({type}));
  }
  return d;
}

Derivation mk_abs(TypeSystem s, const std::string& x, const Term& body, std::vector<Derivation> premises) {
  same_system(s, premises);
  Derivation d;
  d.system = s;
  d.rule = TyRule::Abs;
  for (const auto& p : premises) require(p.term == body, "abs: premise term differs from the body");
  if (s == TypeSystem::V) {
    std::vector<Ty> arrows;
    for (const auto& p : premises) {
      arrows.push_back(Ty::arrow(p.ctx.at(x), p.type));
      d.ctx = d.ctx.plus(p.ctx.without(x));
    }
    d.type = Ty::mult(std::move(arrows));
  } else {
    require(premises.size() == 1, "abs: N has exactly one premise");
    const auto& p = premises[0];
    require(!p.type.is(Ty::Kind::Mult), "abs: N body type must not be a multiset");
    d.type = Ty::arrow(p.ctx.at(x), p.type);
    d.ctx = p.ctx.without(x);
  }
  d.term = Term::abs(x, body);
  d.premises = std::move(premises);
  return d;
}

Derivation mk_app(TypeSystem s, Derivation fun, const Term& arg, std::vector<Derivation> args) {
  same_system(s, args);
  require(fun.system == s, "premise from a different type system");
  for (const auto& a : args) require(a.term == arg, "app: argument premise term differs from the argument");
  Derivation d;
  d.system = s;
  d.rule = TyRule::App;
  d.ctx = fun.ctx;
  if (s == TypeSystem::V) {
    require(args.size() == 1, "app: V has exactly one argument premise");
    require(fun.type.is(Ty::Kind::Mult) && fun.type.items().size() == 1 &&
                fun.type.items()[0].is(Ty::Kind::Arrow),
            "app: function must have type [M -> s]");
    const Ty& arrow = fun.type.items()[0];
    require(arrow.source() == args[0].type, "app: argument type " + args[0].type.str() +
                                                " does not match " + arrow.source().str());
    d.type = arrow.target();
  } else {
    require(fun.type.is(Ty::Kind::Arrow), "app: function must have an arrow type");
    std::vector<Ty> got;
    for (const auto& a : args) got.push_back(a.type);
    require(Ty::mult(got) == fun.type.source(), "app: argument types do not match " + fun.type.source().str());
    d.type = fun.type.target();
  }
  for (const auto& a : args) d.ctx = d.ctx.plus(a.ctx);
  d.term = Term::app(fun.term, arg);
  d.premises.reserve(args.size() + 1);
  d.premises.push_back(std::move(fun));
  for (auto& a : args) d.premises.push_back(std::move(a));
  return d;
}

Derivation mk_es(TypeSystem s, Derivation body, const std::string& x, const Term& arg, std::vector<Derivation> args) {
  same_system(s, args);
  require(body.system == s, "premise from a different type system");
  for (const auto& a : args) require(a.term == arg, "es: argument premise term differs from the argument");
  Derivation d;
  d.system = s;
  d.rule = TyRule::Es;
  if (s == TypeSystem::V) {
    require(args.size() == 1, "es: V has exactly one argument premise");
    require(body.ctx.at(x) == args[0].type,
            "es: argument type " + args[0].type.str() + " does not match " + body.ctx.at(x).str());
  } else {
    std::vector<Ty> got;
    for (const auto& a : args) got.push_back(a.type);
    require(Ty::mult(got) == body.ctx.at(x), "es: argument types do not match " + body.ctx.at(x).str());
  }
  d.type = body.type;
  d.ctx = body.ctx.without(x);
  for (const auto& a : args) d.ctx = d.ctx.plus(a.ctx);
  d.term = Term::es(body.term, x, arg);
  d.premises.reserve(args.size() + 1);
  d.premises.push_back(std::move(body));
  for (auto& a : args) d.premises.push_back(std::move(a));
  return d;
}

// ---- Checking ---------------------------------------------------------------

namespace {

void check_rec(const Derivation& d, std::vector<std::size_t>& path, std::vector<Violation>& out) {
  for (std::size_t i = 0; i < d.premises.size(); ++i) {
    path.push_back(i);
    check_rec(d.premises[i], path, out);
    path.pop_back();
  }
  auto fail = [&](const std::string& m) { out.push_back({path, m}); };
  if (!is_judgment_type(d.system, d.type)) {
    fail("N judgments cannot carry a multiset type");
    return;
  }
  Derivation rebuilt;
  try {
    switch (d.rule) {
      case TyRule::Var:
        if (!d.term.is(Kind::Var)) return fail("var rule on a non-variable");
        if (!d.premises.empty()) return fail("var rule has premises");
        rebuilt = mk_var(d.system, d.term.name(), d.type);
        break;
      case TyRule::Abs:
        if (!d.term.is(Kind::Abs)) return fail("abs rule on a non-abstraction");
        rebuilt = mk_abs(d.system, d.term.name(), d.term.body(), d.premises);
        break;
      case TyRule::App: {
        if (!d.term.is(Kind::App)) return fail("app rule on a non-application");
        if (d.premises.empty()) return fail("app rule without function premise");
        std::vector<Derivation> args(d.premises.begin() + 1, d.premises.end());
        rebuilt = mk_app(d.system, d.premises[0], d.term.arg(), std::move(args));
        break;
      }
      case TyRule::Es: {
        if (!d.term.is(Kind::Es)) return fail("es rule on a non-closure");
        if (d.premises.empty()) return fail("es rule without body premise");
        std::vector<Derivation> args(d.premises.begin() + 1, d.premises.end());
        rebuilt = mk_es(d.system, d.premises[0], d.term.name(), d.term.arg(), std::move(args));
        break;
      }
    }
  } catch (const DerivationError& e) {
    return fail(e.what());
  }
  if (!(rebuilt.term == d.term)) fail("conclusion term is not built from the premises");
  if (!(rebuilt.type == d.type)) fail("conclusion type should be " + rebuilt.type.str() + ", found " + d.type.str());
  if (!(rebuilt.ctx == d.ctx)) fail("conclusion context should be {" + rebuilt.ctx.str() + "}, found {" + d.ctx.str() + "}");
}

}  // namespace

std::vector<Violation> check_derivation(const Derivation& d) {
  std::vector<Violation> out;
  std::vector<std::size_t> path;
  check_rec(d, path, out);
  return out;
}

// ---- Synthesis for surface normal forms ---------------------------------------

namespace {

Derivation synth_v(const Term& t, const Ty& demand) {
  switch (t.kind()) {
    case Kind::Var: return mk_var(TypeSystem::V, t.name(), demand);
    case Kind::Abs:
      if (!(demand == Ty::empty())) throw DerivationError("synthesis: abstraction demanded at " + demand.str());
      return mk_abs(TypeSystem::V, t.name(), t.body(), {});
    case Kind::App: {
      Derivation arg = synth_v(t.arg(), Ty::empty());
      Derivation fun = synth_v(t.fun(), Ty::mult({Ty::arrow(Ty::empty(), demand)}));
      return mk_app(TypeSystem::V, std::move(fun), t.arg(), {std::move(arg)});
    }
    case Kind::Es: {
      Derivation body = synth_v(t.body(), demand);
      Ty m = body.ctx.at(t.name());
      Derivation arg = synth_v(t.arg(), m);
      return mk_es(TypeSystem::V, std::move(body), t.name(), t.arg(), {std::move(arg)});
    }
    case Kind::Bot: break;
  }
  throw DerivationError("synthesis: unexpected bot");
}

Derivation synth_n_neutral(const Term& t, const Ty& demand) {
  if (t.is(Kind::Var)) return mk_var(TypeSystem::N, t.name(), demand);
  if (t.is(Kind::App)) {
    Derivation fun = synth_n_neutral(t.fun(), Ty::arrow(Ty::empty(), demand));
    return mk_app(TypeSystem::N, std::move(fun), t.arg(), {});
  }
  throw DerivationError("synthesis: not a CbN surface normal form");
}

Derivation synth_n(const Term& t) {
  if (t.is(Kind::Abs)) return mk_abs(TypeSystem::N, t.name(), t.body(), {synth_n(t.body())});
  return synth_n_neutral(t, Ty::var("a"));
}

}  // namespace

Derivation synth_nf_derivation(const Term& t, TypeSystem s) {
  if (t.contains_bot()) throw DerivationError("synthesis expects a term without bot");
  Calculus c = s == TypeSystem::V ? Calculus::CbV : Calculus::CbN;
  if (classify_nf(t, c, Level::fin(0)) == NfClass::NotNf)
    throw DerivationError("synthesis expects a surface normal form");
  return s == TypeSystem::V ? synth_v(t, Ty::empty()) : synth_n(t);
}

}  // namespace strata

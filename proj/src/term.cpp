#include "strata/term.hpp"

#include <algorithm>
#include <functional>
#include <unordered_map>
#include <utility>

namespace strata {

std::string to_string(Calculus c) { return c == Calculus::CbV ? "cbv" : "cbn"; }

Calculus parse_calculus(std::string_view s) {
  if (s == "cbv") return Calculus::CbV;
  if (s == "cbn") return Calculus::CbN;
  throw std::invalid_argument("unknown calculus '" + std::string(s) + "'");
}

// ---- Level -------------------------------------------------------------

Level Level::parse(std::string_view s) {
  if (s == "omega" || s == "w" || s == "ω") return omega();
  if (s.empty()) throw std::invalid_argument("empty level");
  unsigned v = 0;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) throw std::invalid_argument("bad level '" + std::string(s) + "'");
    v = v * 10 + static_cast<unsigned>(ch - '0');
  }
  return fin(v);
}

unsigned Level::value() const {
  if (omega_) throw std::logic_error("omega has no finite value");
  return k_;
}

Level Level::pred() const {
  if (omega_) return *this;
  if (k_ == 0) throw std::logic_error("predecessor of level 0");
  return fin(k_ - 1);
}

std::string Level::str() const { return omega_ ? "omega" : std::to_string(k_); }

// ---- Position ----------------------------------------------------------

char edge_label(Edge e) {
  switch (e) {
    case Edge::AbsBody: return 'b';
    case Edge::AppFun: return 'l';
    case Edge::AppArg: return 'r';
    case Edge::EsBody: return 's';
    case Edge::EsArg: return 'e';
  }
  return '?';
}

Position Position::child(Edge e) const {
  Position p = *this;
  p.path.push_back(e);
  return p;
}

bool Position::is_prefix_of(const Position& other) const {
  return path.size() <= other.path.size() && std::equal(path.begin(), path.end(), other.path.begin());
}

std::string Position::str() const {
  std::string s;
  for (std::size_t i = 0; i < path.size(); ++i) {
    if (i) s += '.';
    s += edge_label(path[i]);
  }
  return s;
}

Position Position::parse(std::string_view s) {
  Position p;
  for (char ch : s) {
    switch (ch) {
      case 'b': p.path.push_back(Edge::AbsBody); break;
      case 'l': p.path.push_back(Edge::AppFun); break;
      case 'r': p.path.push_back(Edge::AppArg); break;
      case 's': p.path.push_back(Edge::EsBody); break;
      case 'e': p.path.push_back(Edge::EsArg); break;
      case '.': break;
      default: throw std::invalid_argument("bad position label '" + std::string(1, ch) + "'");
    }
  }
  return p;
}

// ---- Term nodes --------------------------------------------------------

struct Term::Node {
  Kind kind;
  std::string name;
  Term c0{std::shared_ptr<const Node>()}, c1{std::shared_ptr<const Node>()};
  std::size_t size = 1;
  std::vector<std::string> fv;
  bool has_bot = false;
  bool has_es = false;
};

namespace {

std::vector<std::string> merge_fv(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

std::vector<std::string> without(std::vector<std::string> v, const std::string& x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it != v.end() && *it == x) v.erase(it);
  return v;
}

}  // namespace

Term::Term() : node_(Term::bot().node_) {}

Term Term::bot() {
  static const std::shared_ptr<const Node> n = [] {
    auto p = std::make_shared<Node>();
    p->kind = Kind::Bot;
    p->has_bot = true;
    return std::shared_ptr<const Node>(p);
  }();
  return Term(n);
}

Term Term::var(std::string name) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Var;
  n->fv = {name};
  n->name = std::move(name);
  return Term(std::move(n));
}

Term Term::abs(std::string binder, Term body) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Abs;
  n->size = 1 + body.size();
  n->fv = without(body.free_vars(), binder);
  n->has_bot = body.contains_bot();
  n->has_es = body.contains_es();
  n->name = std::move(binder);
  n->c0 = std::move(body);
  return Term(std::move(n));
}

Term Term::app(Term fun, Term arg) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::App;
  n->size = 1 + fun.size() + arg.size();
  n->fv = merge_fv(fun.free_vars(), arg.free_vars());
  n->has_bot = fun.contains_bot() || arg.contains_bot();
  n->has_es = fun.contains_es() || arg.contains_es();
  n->c0 = std::move(fun);
  n->c1 = std::move(arg);
  return Term(std::move(n));
}

Term Term::es(Term body, std::string binder, Term arg) {
  auto n = std::make_shared<Node>();
  n->kind = Kind::Es;
  n->size = 1 + body.size() + arg.size();
  n->fv = merge_fv(without(body.free_vars(), binder), arg.free_vars());
  n->has_bot = body.contains_bot() || arg.contains_bot();
  n->has_es = true;
  n->name = std::move(binder);
  n->c0 = std::move(body);
  n->c1 = std::move(arg);
  return Term(std::move(n));
}

Kind Term::kind() const { return node_->kind; }
const std::string& Term::name() const { return node_->name; }
const Term& Term::body() const { return node_->c0; }
const Term& Term::fun() const { return node_->c0; }
const Term& Term::arg() const { return node_->c1; }
std::size_t Term::size() const { return node_->size; }
const std::vector<std::string>& Term::free_vars() const { return node_->fv; }
bool Term::contains_bot() const { return node_->has_bot; }
bool Term::contains_es() const { return node_->has_es; }

bool Term::has_free(std::string_view x) const {
  const auto& v = node_->fv;
  auto it = std::lower_bound(v.begin(), v.end(), x, [](const std::string& a, std::string_view b) { return a < b; });
  return it != v.end() && *it == x;
}

const Term& Term::child(Edge e) const {
  switch (e) {
    case Edge::AbsBody:
      if (kind() == Kind::Abs) return node_->c0;
      break;
    case Edge::AppFun:
    case Edge::AppArg:
      if (kind() == Kind::App) return e == Edge::AppFun ? node_->c0 : node_->c1;
      break;
    case Edge::EsBody:
    case Edge::EsArg:
      if (kind() == Kind::Es) return e == Edge::EsBody ? node_->c0 : node_->c1;
      break;
  }
  throw PositionError(std::string("edge '") + edge_label(e) + "' does not exist here");
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.size() != b.size()) return false;
  switch (a.kind()) {
    case Kind::Bot: return true;
    case Kind::Var: return a.name() == b.name();
    case Kind::Abs: return a.name() == b.name() && a.body() == b.body();
    case Kind::App: return a.fun() == b.fun() && a.arg() == b.arg();
    case Kind::Es: return a.name() == b.name() && a.body() == b.body() && a.arg() == b.arg();
  }
  return false;
}

// ---- Parser ------------------------------------------------------------

namespace {

constexpr const char* kHole = "@";

class Parser {
 public:
  Parser(std::string_view s, bool allow_hole) : s_(s), allow_hole_(allow_hole) {}

  Term parse_all() {
    Term t = term();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return t;
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
  bool allow_hole_;

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool at_lambda() {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == '\\') return true;
    return s_.substr(pos_, 2) == "\xCE\xBB";  // UTF-8 lambda
  }

  void eat_lambda() {
    if (s_[pos_] == '\\') ++pos_;
    else pos_ += 2;
  }

  void expect(char ch) {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != ch) fail(std::string("expected '") + ch + "'");
    ++pos_;
  }

  static bool ident_start(char ch) { return std::isalpha(static_cast<unsigned char>(ch)) || ch == '_'; }
  static bool ident_char(char ch) {
    return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '\'';
  }

  std::string ident() {
    skip_ws();
    if (pos_ >= s_.size() || !ident_start(s_[pos_])) fail("expected identifier");
    std::size_t start = pos_;
    while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
    std::string id(s_.substr(start, pos_ - start));
    if (id == "bot") {
      pos_ = start;
      fail("'bot' is reserved");
    }
    return id;
  }

  bool atom_start() {
    skip_ws();
    if (pos_ >= s_.size()) return false;
    char ch = s_[pos_];
    return ident_start(ch) || ch == '(' || (allow_hole_ && ch == '@');
  }

  Term term() {
    if (at_lambda()) {
      eat_lambda();
      std::string x = ident();
      expect('.');
      return Term::abs(std::move(x), term());
    }
    return application();
  }

  Term application() {
    if (!atom_start()) fail("expected term");
    Term t = postfix();
    while (true) {
      if (atom_start()) {
        t = Term::app(std::move(t), postfix());
      } else if (at_lambda()) {
        t = Term::app(std::move(t), term());
        break;
      } else {
        break;
      }
    }
    return t;
  }

  Term postfix() {
    Term t = atom();
    while (true) {
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == '[') {
        ++pos_;
        std::string x = ident();
        expect('\\');
        Term u = term();
        expect(']');
        t = Term::es(std::move(t), std::move(x), std::move(u));
      } else {
        return t;
      }
    }
  }

  Term atom() {
    skip_ws();
    char ch = s_[pos_];
    if (ch == '(') {
      ++pos_;
      Term t = term();
      expect(')');
      return t;
    }
    if (ch == '@') {
      ++pos_;
      return Term::var(kHole);
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && ident_char(s_[pos_])) ++pos_;
    if (s_.substr(start, pos_ - start) == "bot") return Term::bot();
    pos_ = start;
    return Term::var(ident());
  }
};

void find_holes(const Term& t, Position& cur, std::vector<Position>& out) {
  switch (t.kind()) {
    case Kind::Var:
      if (t.name() == kHole) out.push_back(cur);
      return;
    case Kind::Bot: return;
    case Kind::Abs:
      cur.path.push_back(Edge::AbsBody);
      find_holes(t.body(), cur, out);
      cur.path.pop_back();
      return;
    case Kind::App:
      cur.path.push_back(Edge::AppFun);
      find_holes(t.fun(), cur, out);
      cur.path.back() = Edge::AppArg;
      find_holes(t.arg(), cur, out);
      cur.path.pop_back();
      return;
    case Kind::Es:
      cur.path.push_back(Edge::EsBody);
      find_holes(t.body(), cur, out);
      cur.path.back() = Edge::EsArg;
      find_holes(t.arg(), cur, out);
      cur.path.pop_back();
      return;
  }
}

}  // namespace

Term parse(std::string_view text) { return Parser(text, false).parse_all(); }

Context Context::parse(std::string_view text) {
  Term t = Parser(text, true).parse_all();
  std::vector<Position> holes;
  Position cur;
  find_holes(t, cur, holes);
  if (holes.size() != 1)
    throw ParseError("context must contain exactly one hole '@' (found " + std::to_string(holes.size()) + ")", 0);
  return Context{replace_at(t, holes[0], Term::bot()), holes[0]};
}

std::string Context::str() const { return print_raw(replace_at(skeleton, hole, Term::var(kHole))); }

// ---- Printer -----------------------------------------------------------

namespace {

void render(const Term& t, std::string& out);

void render_atom(const Term& t, std::string& out) {
  if (t.is(Kind::Var)) out += t.name();
  else if (t.is(Kind::Bot)) out += "bot";
  else {
    out += '(';
    render(t, out);
    out += ')';
  }
}

void render_postfix(const Term& t, std::string& out) {
  if (t.is(Kind::Es)) {
    render_postfix(t.body(), out);
    out += '[';
    out += t.name();
    out += '\\';
    render(t.arg(), out);
    out += ']';
  } else {
    render_atom(t, out);
  }
}

void render_app(const Term& t, std::string& out) {
  if (t.fun().is(Kind::App)) render_app(t.fun(), out);
  else render_postfix(t.fun(), out);
  out += ' ';
  render_postfix(t.arg(), out);
}

void render(const Term& t, std::string& out) {
  switch (t.kind()) {
    case Kind::Abs:
      out += '\\';
      out += t.name();
      out += '.';
      render(t.body(), out);
      return;
    case Kind::App: render_app(t, out); return;
    default: render_postfix(t, out); return;
  }
}

struct Canonicalizer {
  const std::vector<std::string>& free;
  unsigned counter = 0;

  std::string next() {
    while (true) {
      std::string n = "x" + std::to_string(counter++);
      if (!std::binary_search(free.begin(), free.end(), n)) return n;
    }
  }

  Term run(const Term& t, std::vector<std::pair<std::string, std::string>>& env) {
    switch (t.kind()) {
      case Kind::Bot: return t;
      case Kind::Var:
        for (auto it = env.rbegin(); it != env.rend(); ++it)
          if (it->first == t.name()) return Term::var(it->second);
        return t;
      case Kind::Abs: {
        std::string n = next();
        env.emplace_back(t.name(), n);
        Term b = run(t.body(), env);
        env.pop_back();
        return Term::abs(n, b);
      }
      case Kind::App: {
        Term f = run(t.fun(), env);
        return Term::app(f, run(t.arg(), env));
      }
      case Kind::Es: {
        std::string n = next();
        env.emplace_back(t.name(), n);
        Term b = run(t.body(), env);
        env.pop_back();
        return Term::es(b, n, run(t.arg(), env));
      }
    }
    return t;
  }
};

}  // namespace

std::string print_raw(const Term& t) {
  std::string out;
  render(t, out);
  return out;
}

std::string print(const Term& t) {
  Canonicalizer c{t.free_vars()};
  std::vector<std::pair<std::string, std::string>> env;
  return print_raw(c.run(t, env));
}

// ---- Binding machinery -------------------------------------------------

std::vector<std::string> free_vars(const Term& t) { return t.free_vars(); }

namespace {

// Pairs of binders in scope while walking two terms in lockstep.
struct BinderPairs {
  std::vector<std::pair<const std::string*, const std::string*>> stack;

  bool vars_match(const std::string& a, const std::string& b) const {
    for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
      bool ha = *it->first == a, hb = *it->second == b;
      if (ha || hb) return ha && hb;
    }
    return a == b;
  }
  void push(const std::string& a, const std::string& b) { stack.emplace_back(&a, &b); }
  void pop() { stack.pop_back(); }
};

bool alpha_rec(const Term& t, const Term& u, BinderPairs& env, bool partial) {
  if (partial && t.is(Kind::Bot)) return true;
  if (t.kind() != u.kind()) return false;
  if (!partial && t.size() != u.size()) return false;
  switch (t.kind()) {
    case Kind::Bot: return true;
    case Kind::Var: return env.vars_match(t.name(), u.name());
    case Kind::Abs: {
      env.push(t.name(), u.name());
      bool r = alpha_rec(t.body(), u.body(), env, partial);
      env.pop();
      return r;
    }
    case Kind::App: return alpha_rec(t.fun(), u.fun(), env, partial) && alpha_rec(t.arg(), u.arg(), env, partial);
    case Kind::Es: {
      if (!alpha_rec(t.arg(), u.arg(), env, partial)) return false;
      env.push(t.name(), u.name());
      bool r = alpha_rec(t.body(), u.body(), env, partial);
      env.pop();
      return r;
    }
  }
  return false;
}

void key_rec(const Term& t, std::vector<const std::string*>& env, std::string& out) {
  switch (t.kind()) {
    case Kind::Bot: out += 'B'; return;
    case Kind::Var: {
      for (std::size_t i = env.size(); i-- > 0;) {
        if (*env[i] == t.name()) {
          out += '#';
          out += std::to_string(env.size() - 1 - i);
          out += ';';
          return;
        }
      }
      out += '$';
      out += t.name();
      out += ';';
      return;
    }
    case Kind::Abs:
      out += 'L';
      env.push_back(&t.name());
      key_rec(t.body(), env, out);
      env.pop_back();
      return;
    case Kind::App:
      out += 'A';
      key_rec(t.fun(), env, out);
      key_rec(t.arg(), env, out);
      return;
    case Kind::Es:
      out += 'S';
      env.push_back(&t.name());
      key_rec(t.body(), env, out);
      env.pop_back();
      key_rec(t.arg(), env, out);
      return;
  }
}

}  // namespace

bool alpha_eq(const Term& t, const Term& u) {
  if (t.same_node(u)) return true;
  BinderPairs env;
  return alpha_rec(t, u, env, false);
}

bool partial_leq(const Term& t, const Term& u) {
  if (t.same_node(u)) return true;
  BinderPairs env;
  return alpha_rec(t, u, env, true);
}

std::string canonical_key(const Term& t) {
  std::string out;
  out.reserve(t.size() * 3);
  std::vector<const std::string*> env;
  key_rec(t, env, out);
  return out;
}

namespace {

// Body of a binder x (Abs or Es body) under substitution of y by u.
std::pair<std::string, Term> subst_under_binder(const std::string& z, const Term& body, const std::string& y,
                                                const Term& u) {
  if (!u.has_free(z)) return {z, subst(body, y, u)};
  std::string z2 = fresh_name(z, [&](const std::string& n) {
    return n == y || u.has_free(n) || body.has_free(n);
  });
  Term renamed = subst(body, z, Term::var(z2));
  return {z2, subst(renamed, y, u)};
}

}  // namespace

Term subst(const Term& t, const std::string& x, const Term& u) {
  if (!t.has_free(x)) return t;
  switch (t.kind()) {
    case Kind::Var: return u;
    case Kind::App: return Term::app(subst(t.fun(), x, u), subst(t.arg(), x, u));
    case Kind::Abs: {
      auto [z, b] = subst_under_binder(t.name(), t.body(), x, u);
      return Term::abs(z, b);
    }
    case Kind::Es: {
      Term a = subst(t.arg(), x, u);
      if (t.name() == x || !t.body().has_free(x)) return Term::es(t.body(), t.name(), a);
      auto [z, b] = subst_under_binder(t.name(), t.body(), x, u);
      return Term::es(b, z, a);
    }
    case Kind::Bot: return t;
  }
  return t;
}

// ---- Positions ---------------------------------------------------------

const Term& subterm_at(const Term& t, const Position& p) {
  const Term* cur = &t;
  for (Edge e : p.path) cur = &cur->child(e);
  return *cur;
}

bool valid_position(const Term& t, const Position& p) {
  try {
    (void)subterm_at(t, p);
    return true;
  } catch (const PositionError&) {
    return false;
  }
}

namespace {
Term replace_rec(const Term& t, const std::vector<Edge>& path, std::size_t i, const Term& u) {
  if (i == path.size()) return u;
  Edge e = path[i];
  Term c = replace_rec(t.child(e), path, i + 1, u);
  switch (e) {
    case Edge::AbsBody: return Term::abs(t.name(), c);
    case Edge::AppFun: return Term::app(c, t.arg());
    case Edge::AppArg: return Term::app(t.fun(), c);
    case Edge::EsBody: return Term::es(c, t.name(), t.arg());
    case Edge::EsArg: return Term::es(t.body(), t.name(), c);
  }
  return t;
}
}  // namespace

Term replace_at(const Term& t, const Position& p, const Term& u) { return replace_rec(t, p.path, 0, u); }

unsigned level_of_path(const Position& p, Calculus c) {
  unsigned n = 0;
  for (Edge e : p.path) {
    if (c == Calculus::CbV ? e == Edge::AbsBody : (e == Edge::AppArg || e == Edge::EsArg)) ++n;
  }
  return n;
}

unsigned level_of(const Term& t, const Position& p, Calculus c) {
  if (!valid_position(t, p)) throw PositionError("invalid position '" + p.str() + "'");
  return level_of_path(p, c);
}

// ---- Predicates --------------------------------------------------------

bool is_value(const Term& t) { return t.is(Kind::Var) || t.is(Kind::Abs); }
bool is_pure(const Term& t) { return !t.contains_bot() && !t.contains_es(); }
bool contains_bot(const Term& t) { return t.contains_bot(); }

const Term& strip_list(const Term& t) {
  const Term* cur = &t;
  while (cur->is(Kind::Es)) cur = &cur->body();
  return *cur;
}

std::size_t list_depth(const Term& t) {
  std::size_t n = 0;
  for (const Term* cur = &t; cur->is(Kind::Es); cur = &cur->body()) ++n;
  return n;
}

namespace terms {
Term id() { return Term::abs("x", Term::var("x")); }
Term delta() { return Term::abs("x", Term::app(Term::var("x"), Term::var("x"))); }
Term omega() { return Term::app(delta(), delta()); }
}  // namespace terms

}  // namespace strata

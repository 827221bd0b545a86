#pragma once

#include <cctype>
#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace strata {

enum class Kind : std::uint8_t { Var, Abs, App, Es, Bot };

enum class Calculus : std::uint8_t { CbV, CbN };

std::string to_string(Calculus c);
Calculus parse_calculus(std::string_view s);

// Natural number or omega.
class Level {
 public:
  static Level fin(unsigned k) { return Level(k, false); }
  static Level omega() { return Level(0, true); }
  static Level parse(std::string_view s);

  bool is_omega() const { return omega_; }
  unsigned value() const;
  // k-1 for k > 0, omega for omega. Undefined at 0.
  Level pred() const;
  bool admits(unsigned depth) const { return omega_ || depth <= k_; }
  std::string str() const;

  friend bool operator==(const Level&, const Level&) = default;
  friend std::strong_ordering operator<=>(const Level& a, const Level& b) {
    if (a.omega_ != b.omega_) return a.omega_ ? std::strong_ordering::greater : std::strong_ordering::less;
    return a.k_ <=> b.k_;
  }

 private:
  Level(unsigned k, bool w) : k_(k), omega_(w) {}
  unsigned k_;
  bool omega_;
};

enum class Edge : std::uint8_t { AbsBody, AppFun, AppArg, EsBody, EsArg };

char edge_label(Edge e);

struct Position {
  std::vector<Edge> path;

  Position child(Edge e) const;
  bool is_prefix_of(const Position& other) const;
  std::string str() const;  // dot-joined labels b/l/r/s/e
  static Position parse(std::string_view s);
  friend bool operator==(const Position&, const Position&) = default;
  friend auto operator<=>(const Position&, const Position&) = default;
};

class Term {
 public:
  Term();  // Bot

  static Term var(std::string name);
  static Term abs(std::string binder, Term body);
  static Term app(Term fun, Term arg);
  static Term es(Term body, std::string binder, Term arg);
  static Term bot();

  Kind kind() const;
  bool is(Kind k) const { return kind() == k; }
  // Variable name, or the binder of Abs/Es.
  const std::string& name() const;
  // Abs/Es body.
  const Term& body() const;
  const Term& fun() const;
  // App/Es argument.
  const Term& arg() const;
  const Term& child(Edge e) const;

  std::size_t size() const;
  const std::vector<std::string>& free_vars() const;  // sorted
  bool has_free(std::string_view x) const;
  bool contains_bot() const;
  bool contains_es() const;

  bool same_node(const Term& o) const { return node_ == o.node_; }
  // Structural equality including bound names.
  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& msg, std::size_t offset)
      : std::runtime_error(msg + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

class PositionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Term parse(std::string_view text);
// Canonical rendering: binders renamed x0, x1, ... left to right.
std::string print(const Term& t);
// Rendering with the term's own names.
std::string print_raw(const Term& t);

std::vector<std::string> free_vars(const Term& t);
bool alpha_eq(const Term& t, const Term& u);
// Nameless canonical key; equal keys iff alpha-equal.
std::string canonical_key(const Term& t);

// Capture-avoiding t{x:=u}.
Term subst(const Term& t, const std::string& x, const Term& u);
// A name derived from base that the predicate does not reject.
template <class Taken>
std::string fresh_name(const std::string& base, Taken&& taken) {
  std::string stem = base;
  while (!stem.empty() && (std::isdigit(static_cast<unsigned char>(stem.back())) || stem.back() == '\''))
    stem.pop_back();
  if (stem.empty()) stem = "v";
  for (unsigned i = 1;; ++i) {
    std::string cand = stem + std::to_string(i);
    if (!taken(cand)) return cand;
  }
}

const Term& subterm_at(const Term& t, const Position& p);
bool valid_position(const Term& t, const Position& p);
// Replace the subterm at p by u, allowing capture (context plugging).
Term replace_at(const Term& t, const Position& p, const Term& u);
unsigned level_of(const Term& t, const Position& p, Calculus c);
unsigned level_of_path(const Position& p, Calculus c);

bool partial_leq(const Term& t, const Term& u);

bool is_value(const Term& t);
bool is_pure(const Term& t);
bool contains_bot(const Term& t);

// Strip the maximal ES spine t = L<core>; returns core.
const Term& strip_list(const Term& t);
std::size_t list_depth(const Term& t);

// A term with one hole; the hole is stored as a position in a skeleton.
struct Context {
  Term skeleton;
  Position hole;

  static Context parse(std::string_view text);  // '@' marks the hole
  static Context empty() { return Context{Term::bot(), Position{}}; }
  Term plug(const Term& t) const { return replace_at(skeleton, hole, t); }
  std::string str() const;
};

namespace terms {
Term id();
Term delta();
Term omega();
}  // namespace terms

}  // namespace strata

template <>
struct std::hash<strata::Term> {
  std::size_t operator()(const strata::Term& t) const noexcept {
    return std::hash<std::string>{}(strata::canonical_key(t));
  }
};

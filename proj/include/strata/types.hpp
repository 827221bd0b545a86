#pragma once

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "strata/approximation.hpp"
#include "strata/reduction.hpp"

namespace strata {

enum class TypeSystem : std::uint8_t { V, N };
std::string to_string(TypeSystem s);
TypeSystem system_for(Calculus c);

// α | [σ1, ..., σn] | [σ1, ..., σn] -> σ. Multisets are kept sorted, so
// structural equality is multiset equality.
class Ty {
 public:
  enum class Kind : std::uint8_t { Var, Mult, Arrow };

  static Ty var(std::string name);
  static Ty mult(std::vector<Ty> items);
  static Ty empty() { return mult({}); }
  static Ty arrow(Ty source, Ty target);  // source must be a multiset

  Kind kind() const { return kind_; }
  bool is(Kind k) const { return kind_ == k; }
  const std::string& name() const { return name_; }
  // Multiset elements (Mult) or source elements (Arrow).
  const std::vector<Ty>& items() const { return items_; }
  Ty source() const;  // Arrow only
  const Ty& target() const;

  Ty plus(const Ty& other) const;  // multiset union
  std::string str() const;

  friend bool operator==(const Ty& a, const Ty& b);
  friend std::strong_ordering operator<=>(const Ty& a, const Ty& b);

 private:
  Kind kind_ = Kind::Mult;
  std::string name_;
  std::vector<Ty> items_;
  std::shared_ptr<const Ty> target_;
};

Ty parse_type(std::string_view text);

// Variable -> multiset; absent variables carry the empty multiset.
class TypingCtx {
 public:
  const Ty& at(const std::string& x) const;
  void add(const std::string& x, const Ty& m);
  TypingCtx without(const std::string& x) const;
  TypingCtx plus(const TypingCtx& o) const;
  const std::map<std::string, Ty>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }
  std::string str() const;

  friend bool operator==(const TypingCtx&, const TypingCtx&) = default;

 private:
  std::map<std::string, Ty> entries_;
};

enum class TyRule : std::uint8_t { Var, Abs, App, Es };
std::string to_string(TyRule r);
TyRule parse_ty_rule(std::string_view s);

struct Derivation {
  TypeSystem system = TypeSystem::V;
  TyRule rule = TyRule::Var;
  TypingCtx ctx;
  Term term;
  Ty type;
  // V: abs → one premise per element of the type; app → [fun, arg];
  //    es → [body, arg].
  // N: abs → [body]; app/es → [fun-or-body, arg_1 ... arg_n].
  std::vector<Derivation> premises;

  std::string judgment() const;
  std::size_t size() const;
};

class DerivationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Rule constructors: conclusions are computed from the premises. Terms of
// untyped slots (abs with no premise, arguments with no premise) are passed
// explicitly.
Derivation mk_var(TypeSystem s, const std::string& x, const Ty& type);
Derivation mk_abs(TypeSystem s, const std::string& x, const Term& body, std::vector<Derivation> premises);
Derivation mk_app(TypeSystem s, Derivation fun, const Term& arg, std::vector<Derivation> args);
Derivation mk_es(TypeSystem s, Derivation body, const std::string& x, const Term& arg, std::vector<Derivation> args);

struct Violation {
  std::vector<std::size_t> path;  // premise indices from the root
  std::string message;
};

std::vector<Violation> check_derivation(const Derivation& d);

// Derivations for S_0-normal forms.
Derivation synth_nf_derivation(const Term& t, TypeSystem s);

// Subject reduction / expansion for level-0 steps.
Derivation reduce_derivation(const Derivation& d, const Step& step);
Derivation expand_derivation(const Derivation& d, const Step& step);

// Capture-avoiding renaming of a free variable across a derivation.
Derivation rename_free(const Derivation& d, const std::string& from, const std::string& to);
// Rename binders so the conclusion term is name-identical to target.
Derivation align_to(const Derivation& d, const Term& target);

class HoleContradiction : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Derivation typed_genericity(const Derivation& d, const Context& c, const Term& t, const Term& u, const Oracle& o);

enum class Typability : std::uint8_t { Typed, Untypable, Undetermined };
std::string to_string(Typability t);

struct TypabilityResult {
  Typability kind = Typability::Undetermined;
  std::optional<Derivation> derivation;
};

TypabilityResult typable(const Term& t, Calculus c, std::size_t fuel = default_fuel());

}  // namespace strata

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "strata/term.hpp"

namespace strata {

enum class Rule : std::uint8_t { DB, SV, SN, BetaV };

std::string to_string(Rule r);
Rule parse_rule(std::string_view s);

struct RedexOccurrence {
  Position position;
  Rule rule;
  // Length of the list context L matched by the rule (0 for sN and betaV).
  std::size_t list_length = 0;
};

// The matched parts of a redex: L = list, plus the rule-specific pieces.
//   dB : core = λx.s (Abs), other = argument
//   sv : core = value v, other = ES body t, var = x
//   sN : core = argument u, other = ES body t, var = x
struct Decomposition {
  std::vector<std::pair<std::string, Term>> list;  // outermost ES first
  Term core;
  Term other;
  std::string var;
};

// Decompose the redex subterm according to rule; throws StaleRedex on mismatch.
Decomposition decompose(const Term& redex, Rule rule);
// Same, with the list binders renamed so that contraction is capture-free.
Decomposition decompose_hygienic(const Term& redex, Rule rule);
// Rebuild the redex from a decomposition.
Term replug(const Decomposition& d, Rule rule);
// Wrap t in the list context (innermost ES last in the list).
Term plug_list(const std::vector<std::pair<std::string, Term>>& list, const Term& t);
// Rule right-hand side.
Term contract(const Term& redex, Rule rule);

class StaleRedex : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct Step {
  Term before;
  Term after;
  RedexOccurrence occurrence;
  Calculus calculus = Calculus::CbV;
  unsigned level_required = 0;
};

enum class Strategy : std::uint8_t { LeftmostOutermost, RightmostInnermost };
std::string to_string(Strategy s);
Strategy parse_strategy(std::string_view s);

enum class Outcome : std::uint8_t { NormalForm, Cycle, FuelExhausted };
std::string to_string(Outcome o);

struct Trace {
  Term initial;
  Calculus calculus = Calculus::CbV;
  Level level = Level::omega();
  Strategy strategy = Strategy::LeftmostOutermost;
  std::vector<Step> steps;
  Outcome outcome = Outcome::NormalForm;
  std::size_t cycle_index = 0;  // meaningful when outcome == Cycle

  const Term& final_term() const { return steps.empty() ? initial : steps.back().after; }
};

inline constexpr std::size_t kDefaultFuel = 10000;
// Default fuel, overridable through the STRATA_FUEL environment variable.
std::size_t default_fuel();

// Does the subterm match the rule's left-hand side?
bool matches(const Term& t, Rule rule);

std::vector<RedexOccurrence> find_redexes(const Term& t, Calculus c, Level k);
std::optional<RedexOccurrence> first_redex(const Term& t, Calculus c, Level k);
bool is_normal(const Term& t, Calculus c, Level k);

Term apply_step(const Term& t, const RedexOccurrence& o);
Step make_step(const Term& t, const RedexOccurrence& o, Calculus c);

std::optional<Step> reduce_once(const Term& t, Calculus c, Level k,
                                Strategy s = Strategy::LeftmostOutermost);
Trace normalize(const Term& t, Calculus c, Level k, std::size_t fuel = kDefaultFuel,
                Strategy s = Strategy::LeftmostOutermost);

// Plotkin's call-by-value beta on pure terms.
std::vector<RedexOccurrence> plotkin_find_redexes(const Term& t, bool weak);
Term plotkin_step(const Term& t, const RedexOccurrence& o);

}  // namespace strata

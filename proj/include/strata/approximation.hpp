#pragma once

#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

#include "strata/reduction.hpp"

namespace strata {

enum class Meaning : std::uint8_t { Meaningful, Meaningless, Unknown };
std::string to_string(Meaning m);

struct MeaningStatus {
  Meaning kind = Meaning::Unknown;
  // Level-0 trace: NormalForm for Meaningful, Cycle for Meaningless,
  // FuelExhausted for Unknown. Absent when the verdict is an annotation.
  std::optional<Trace> trace;
  bool asserted = false;
  std::size_t fuel_spent = 0;
};

// Raised by operations that need a decided status and meet an Unknown one.
class UndeterminedError : public std::runtime_error {
 public:
  UndeterminedError(const std::string& msg, Term subterm)
      : std::runtime_error(msg), subterm_(std::move(subterm)) {}
  const Term& subterm() const { return subterm_; }

 private:
  Term subterm_;
};

// Meaningfulness oracle for one calculus: level-0 normalisation plus
// user-asserted meaningless terms. Statuses are memoised by canonical key;
// the memo is shared safely between threads.
class Oracle {
 public:
  explicit Oracle(Calculus c, std::size_t fuel = default_fuel()) : calculus_(c), fuel_(fuel) {}
  Oracle(const Oracle& o);
  Oracle& operator=(const Oracle&) = delete;

  Calculus calculus() const { return calculus_; }
  std::size_t fuel() const { return fuel_; }

  void assert_meaningless(const Term& t);
  bool is_asserted(const Term& t) const;
  std::size_t annotation_count() const { return asserted_.size(); }

  MeaningStatus status(const Term& t) const;
  Meaning classify(const Term& t) const;

  std::size_t memo_size() const;

 private:
  Calculus calculus_;
  std::size_t fuel_;
  std::unordered_set<std::string> asserted_;
  mutable std::shared_mutex mu_;
  mutable std::unordered_map<std::string, Meaning> memo_;
};

MeaningStatus meaning_status(const Term& t, Calculus c, std::size_t fuel = default_fuel());

// Load annotations: JSON array of {"term": ..., "status": "meaningless"}.
void load_annotations(Oracle& o, const std::string& json_text);

struct Undetermined {
  Position position;
  Term subterm;
};
using Approximant = std::variant<Term, Undetermined>;

Approximant meaningful_approximant(const Term& t, const Oracle& o);
// Throws UndeterminedError instead of returning Undetermined.
Term approximant_or_throw(const Term& t, const Oracle& o);

struct Collapsed {};
struct Mapped {
  Step partial_step;
  Term over;  // the target of the partial step; A(after) ⊑ over
};
using StepApproximation = std::variant<Collapsed, Mapped>;

// Map a step t -> u to A(t) ->= û with A(u) ⊑ û.
StepApproximation approximate_step(const Step& s, const Oracle& o);

class LiftError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Replay a step on partial terms over a bigger (more defined) term.
Step lift_step(const Step& partial, const Term& bigger);

}  // namespace strata

#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "strata/approximation.hpp"

namespace strata {

enum class Theory : std::uint8_t { Lambda, H, HStar };
std::string to_string(Theory t);
Theory parse_theory(std::string_view s);  // lambda | h | hstar

enum class VerdictKind : std::uint8_t { Equal, NotEqual, Unknown };
std::string to_string(VerdictKind v);

struct Falsification {
  Context context;
  Meaning left = Meaning::Unknown;   // status of C<t>
  Meaning right = Meaning::Unknown;  // status of C<u>
};

struct Verdict {
  VerdictKind kind = VerdictKind::Unknown;
  Theory theory = Theory::Lambda;
  Calculus calculus = Calculus::CbV;
  Term left, right;
  char rule = 'e';  // which judging rule decided
  std::string justification;

  // Rules (a) and (c): level-omega reductions from each side. For (a) they
  // end in alpha-equal terms, for (c) in distinct normal forms.
  std::vector<Step> left_steps, right_steps;
  // Rules (b) and (d): level-0 meaningfulness statuses.
  std::optional<MeaningStatus> left_status, right_status;
  // Observational refutation.
  std::optional<Falsification> falsification;
  std::size_t contexts_tried = 0;
};

struct JudgeBudgets {
  std::size_t context_size = 2;
};

Verdict judge(Theory th, const Term& t, const Term& u, const Oracle& o, JudgeBudgets b = {});

// Every context of exactly/at most the given size over the testing-context
// signature: hole, C p, p C, λx.C, C[x\p], p[x\C] with p from a fixed pool.
std::vector<Context> enumerate_contexts(std::size_t max_size);
const std::vector<Term>& context_pool();

std::optional<Falsification> falsify_observational(const Term& t, const Term& u, const Oracle& o,
                                                   std::size_t context_budget, std::size_t* tried = nullptr);

// Replays the certificate of an Equal/NotEqual verdict; Unknown verdicts
// verify trivially.
bool verify_verdict(const Verdict& v, std::size_t fuel = default_fuel());

nlohmann::json to_json(const Verdict& v);

}  // namespace strata

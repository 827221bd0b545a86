#pragma once

#include <json.hpp>

#include "strata/approximation.hpp"
#include "strata/reduction.hpp"
#include "strata/types.hpp"

namespace strata {

using json = nlohmann::json;

json to_json(const Position& p);
json to_json(const Step& s);
json to_json(const Trace& t);
json to_json(const MeaningStatus& m);

// Derivation documents: {"system", "rule", "context": {name: [types]},
// "term", "type", "premises": [...]}. Terms keep their own names.
json to_json(const Derivation& d);
// Structural parse only; validity is check_derivation's job.
Derivation derivation_from_json(const json& j);

// Replay a serialised step against its before term.
Step step_from_json(const json& j);

}  // namespace strata
